#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "multinet/detection.hpp"
#include "multinet/rng.hpp"
#include "support/stats.hpp"

using namespace multinet;
using namespace testsupport;

namespace {

// Two disjoint triangles on nodes {0,1,2} and {3,4,5}.
std::vector<std::pair<int, int>> two_triangles() {
  std::vector<std::pair<int, int>> edges;
  for (int base : {0, 3}) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) edges.push_back({base + i, base + j});
    }
  }
  return edges;
}

MultilayerNetwork monolayer(int n,
                            const std::vector<std::pair<int, int>>& edges) {
  MultilayerShape shape(n, {{1, AspectOrdering::unordered}});
  std::vector<MultilayerEdge> list;
  for (const auto& [u, v] : edges) list.push_back({u, v, 1.0});
  return MultilayerNetwork(shape, false, std::move(list));
}

// Newman-Girvan modularity with a resolution factor on the null term.
double gamma_oracle(const std::vector<std::pair<int, int>>& edges,
                    const std::vector<int>& labels, double gamma) {
  const double m = static_cast<double>(edges.size());
  std::map<int, double> inside, degree;
  for (const auto& [u, v] : edges) {
    if (labels[u] == labels[v]) inside[labels[u]] += 1;
    degree[labels[u]] += 1;
    degree[labels[v]] += 1;
  }
  double q = 0;
  for (const auto& [c, d] : degree) {
    q += inside[c] / m - gamma * (d / (2 * m)) * (d / (2 * m));
  }
  return q;
}

}  // namespace

TEST_CASE("single-layer modularity equals the exhaustive oracle") {
  const auto edges = two_triangles();
  const MultilayerNetwork net = monolayer(6, edges);
  const MultilayerShape& shape = net.shape();
  ModularityConfig config;
  config.omega = 0.0;

  const auto partitions = all_set_partitions(6);
  REQUIRE(partitions.size() == 203);
  double best = -2;
  std::vector<int> argbest;
  for (const auto& labels : partitions) {
    const MultilayerPartition part(shape, labels);
    const double got = multilayer_modularity(part, net, config);
    CHECK(got == doctest::Approx(modularity_oracle(edges, labels))
                     .epsilon(1e-12));
    if (got > best) {
      best = got;
      argbest = labels;
    }
  }
  // The planted two-community split is the unique maximum at 1/2.
  CHECK(best == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(argbest == std::vector<int>{0, 0, 0, 1, 1, 1});

  // One community scores zero; resolutions rescale the null term.
  CHECK(multilayer_modularity(MultilayerPartition::constant(shape, 0), net,
                              config) == doctest::Approx(0.0).epsilon(1e-15));
  ModularityConfig sharp = config;
  sharp.resolution = 2.5;
  for (const auto& labels : partitions) {
    const MultilayerPartition part(shape, labels);
    CHECK(multilayer_modularity(part, net, sharp) ==
          doctest::Approx(gamma_oracle(edges, labels, 2.5)).epsilon(1e-12));
  }
}

TEST_CASE("zero coupling reduces to an edge-weighted layer average") {
  // Layer 0: two triangles on 6 nodes; layer 1: a single edge.
  MultilayerShape shape(6, {{2, AspectOrdering::unordered}});
  std::vector<MultilayerEdge> list;
  for (const auto& [u, v] : two_triangles()) list.push_back({u, v, 1.0});
  list.push_back({shape.supra_index(0, 1), shape.supra_index(3, 1), 1.0});
  const MultilayerNetwork net(shape, false, std::move(list));

  RngStream rng(40);
  ModularityConfig config;
  config.omega = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> labels(12);
    for (int& x : labels) x = rng.uniform_int(3);
    const MultilayerPartition part(shape, labels);
    const std::vector<int> layer0(labels.begin(), labels.begin() + 6);
    const std::vector<int> layer1(labels.begin() + 6, labels.end());
    const double q0 = modularity_oracle(two_triangles(), layer0);
    const double q1 = modularity_oracle({{0, 3}}, layer1);
    // Per-layer edge masses 2m: 12 and 2, so weights 12/14 and 2/14.
    const double expected = (12 * q0 + 2 * q1) / 14;
    CHECK(multilayer_modularity(part, net, config) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("coupling term: hand-computed edgeless fixtures") {
  MultilayerShape shape(2, {{3, AspectOrdering::ordered}});
  const MultilayerNetwork empty(shape, false, {});
  ModularityConfig ordinal;
  ordinal.omega = 1.0;
  ordinal.topology = CouplingTopology::ordinal;
  ModularityConfig categorical = ordinal;
  categorical.topology = CouplingTopology::categorical;

  // Node 0 changes community after layer 1; node 1 never does.
  const MultilayerPartition part(shape, {0, 1, 0, 1, 2, 1});
  // Ordinal pairs per node: (l0,l1), (l1,l2).  Agreements: node 0 one of
  // two, node 1 two of two -> 3 of 4.
  CHECK(multilayer_modularity(part, empty, ordinal) ==
        doctest::Approx(0.75).epsilon(1e-12));
  // Categorical adds (l0,l2): node 0 agrees on one of three, node 1 on all
  // three -> 4 of 6.
  CHECK(multilayer_modularity(part, empty, categorical) ==
        doctest::Approx(2.0 / 3).epsilon(1e-12));
  // Everything aligned: the coupling term is total and Q = 1.
  CHECK(multilayer_modularity(MultilayerPartition::constant(shape, 0), empty,
                              ordinal) == doctest::Approx(1.0).epsilon(1e-12));
  // Empty network with zero coupling: defined as 0.
  ModularityConfig off;
  off.omega = 0.0;
  CHECK(multilayer_modularity(part, empty, off) == 0.0);
}

TEST_CASE("quality is a ratio of terms linear in the coupling strength") {
  // num(omega) = A + omega * B over den(omega) = 2m + 2 * omega * pairs, so
  // num(2) = 2 num(1) - num(0) pins Q(2) from Q(0) and Q(1).
  const int n = 5, l = 3;
  MultilayerShape shape(n, {{l, AspectOrdering::ordered}});
  std::vector<MultilayerEdge> list;
  RngStream rng(41);
  for (int layer = 0; layer < l; ++layer) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.uniform() < 0.4) {
          list.push_back(
              {shape.supra_index(i, layer), shape.supra_index(j, layer), 1.0});
        }
      }
    }
  }
  const MultilayerNetwork net(shape, false, std::move(list));
  const double two_m = 2.0 * net.edge_count();
  const double pairs = n * (l - 1);  // ordinal couplings

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> labels(n * l);
    for (int& x : labels) x = rng.uniform_int(3);
    const MultilayerPartition part(shape, labels);
    ModularityConfig config;
    config.omega = 0.0;
    const double q0 = multilayer_modularity(part, net, config);
    config.omega = 1.0;
    const double q1 = multilayer_modularity(part, net, config);
    config.omega = 2.0;
    const double q2 = multilayer_modularity(part, net, config);
    const double num0 = q0 * two_m;
    const double num1 = q1 * (two_m + 2 * pairs);
    const double predicted = (2 * num1 - num0) / (two_m + 4 * pairs);
    CHECK(q2 == doctest::Approx(predicted).epsilon(1e-9));
  }
}

TEST_CASE("modularity validates its inputs") {
  MultilayerShape shape(4, {{2, AspectOrdering::unordered}});
  const MultilayerNetwork net(shape, false, {{0, 1, 1.0}});
  const MultilayerPartition part = MultilayerPartition::constant(shape, 0);
  ModularityConfig config;

  config.omega = -0.5;
  CHECK_THROWS_AS(multilayer_modularity(part, net, config),
                  std::invalid_argument);
  config.omega = 1.0;
  config.resolution = 0.0;
  CHECK_THROWS_AS(multilayer_modularity(part, net, config),
                  std::invalid_argument);

  // Interlayer edges are outside this quality's domain.
  const MultilayerNetwork cross(shape, false, {{0, 4, 1.0}});
  CHECK_THROWS_AS(multilayer_modularity(part, cross, ModularityConfig{}),
                  std::invalid_argument);

  // Multi-aspect shapes are rejected.
  MultilayerShape deep(4, {{2, AspectOrdering::unordered},
                           {2, AspectOrdering::ordered}});
  const MultilayerNetwork deep_net(deep, false, {});
  CHECK_THROWS_AS(
      multilayer_modularity(MultilayerPartition::constant(deep, 0), deep_net,
                            ModularityConfig{}),
      std::invalid_argument);

  // Directed networks are rejected.
  const MultilayerNetwork directed(shape, true, {{0, 1, 1.0}});
  CHECK_THROWS_AS(multilayer_modularity(part, directed, ModularityConfig{}),
                  std::invalid_argument);
}

TEST_CASE("louvain recovers the planted cliques") {
  const MultilayerNetwork net = monolayer(6, two_triangles());
  ModularityConfig config;
  config.omega = 0.0;
  for (MoveRule rule : {MoveRule::max_gain, MoveRule::proportional_gain}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      RngStream rng(seed);
      GenLouvainTrace trace;
      const MultilayerPartition found =
          genlouvain(net, config, rule, rng, &trace);
      CHECK(multilayer_modularity(found, net, config) ==
            doctest::Approx(0.5).epsilon(1e-12));
      // Same side iff same community.
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
          CHECK((found.label(i, 0) == found.label(j, 0)) ==
                (i / 3 == j / 3));
        }
      }
      CHECK(trace.moves > 0);
    }
  }
}

TEST_CASE("louvain trace: monotone sweeps and exact aggregation") {
  const int n = 40, l = 3;
  MultilayerShape shape(n, {{l, AspectOrdering::ordered}});
  std::vector<MultilayerEdge> list;
  RngStream mk(42);
  // Two planted communities with mostly internal edges.
  for (int layer = 0; layer < l; ++layer) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const bool same = (i < n / 2) == (j < n / 2);
        const double p = same ? 0.3 : 0.02;
        if (mk.uniform() < p) {
          list.push_back(
              {shape.supra_index(i, layer), shape.supra_index(j, layer), 1.0});
        }
      }
    }
  }
  const MultilayerNetwork net(shape, false, std::move(list));
  ModularityConfig config;
  config.omega = 1.0;

  RngStream rng(43);
  GenLouvainTrace trace;
  const MultilayerPartition found =
      genlouvain(net, config, MoveRule::max_gain, rng, &trace);

  REQUIRE(!trace.sweep_quality.empty());
  for (std::size_t i = 1; i < trace.sweep_quality.size(); ++i) {
    CHECK(trace.sweep_quality[i] >= trace.sweep_quality[i - 1] - 1e-9);
  }
  REQUIRE(trace.aggregate_before.size() == trace.aggregate_after.size());
  for (std::size_t i = 0; i < trace.aggregate_before.size(); ++i) {
    const double scale = std::max(1.0, std::abs(trace.aggregate_before[i]));
    CHECK(std::abs(trace.aggregate_after[i] - trace.aggregate_before[i]) <=
          1e-9 * scale);
  }
  CHECK(trace.phases >= 1);

  // The normalized quality of the result matches the final trace entry.
  const double two_mu =
      2.0 * net.edge_count() + 2.0 * config.omega * n * (l - 1);
  CHECK(multilayer_modularity(found, net, config) ==
        doctest::Approx(trace.sweep_quality.back() / two_mu).epsilon(1e-9));
  // And beats leaving everything alone.
  std::vector<int> singleton_labels(shape.state_node_count());
  for (int i = 0; i < shape.state_node_count(); ++i) singleton_labels[i] = i;
  CHECK(multilayer_modularity(found, net, config) >
        multilayer_modularity(MultilayerPartition(shape, singleton_labels),
                              net, config));
}

TEST_CASE("louvain: strong coupling locks layers together") {
  const int n = 24, l = 4;
  MultilayerShape shape(n, {{l, AspectOrdering::ordered}});
  std::vector<MultilayerEdge> list;
  RngStream mk(44);
  for (int layer = 0; layer < l; ++layer) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const bool same = (i < n / 2) == (j < n / 2);
        if (mk.uniform() < (same ? 0.4 : 0.05)) {
          list.push_back(
              {shape.supra_index(i, layer), shape.supra_index(j, layer), 1.0});
        }
      }
    }
  }
  const MultilayerNetwork net(shape, false, std::move(list));
  ModularityConfig config;
  config.omega = 1000.0;
  RngStream rng(45);
  const MultilayerPartition found =
      genlouvain(net, config, MoveRule::max_gain, rng);
  for (int node = 0; node < n; ++node) {
    for (int layer = 1; layer < l; ++layer) {
      CHECK(found.label(node, layer) == found.label(node, 0));
    }
  }
}

TEST_CASE("louvain: deterministic for max gain, seed-driven otherwise") {
  const MultilayerNetwork net = monolayer(6, two_triangles());
  ModularityConfig config;
  config.omega = 0.0;
  RngStream a(1), b(999);
  const MultilayerPartition pa =
      genlouvain(net, config, MoveRule::max_gain, a);
  const MultilayerPartition pb =
      genlouvain(net, config, MoveRule::max_gain, b);
  CHECK(pa == pb);

  // A single-edge graph has exactly one improving move; both rules take it.
  const MultilayerNetwork pair_net = monolayer(2, {{0, 1}});
  for (MoveRule rule : {MoveRule::max_gain, MoveRule::proportional_gain}) {
    RngStream rng(7);
    const MultilayerPartition merged =
        genlouvain(pair_net, config, rule, rng);
    CHECK(merged.label(0, 0) == merged.label(1, 0));
  }
}

TEST_CASE("louvain: isolated nodes stay singletons") {
  // Node 4 has no edges; with zero coupling nothing can pull it anywhere.
  const MultilayerNetwork net = monolayer(5, {{0, 1}, {0, 2}, {1, 2}});
  ModularityConfig config;
  config.omega = 0.0;
  RngStream rng(46);
  const MultilayerPartition found =
      genlouvain(net, config, MoveRule::max_gain, rng);
  for (int other = 0; other < 4; ++other) {
    CHECK(found.label(4, 0) != found.label(other, 0));
  }
  CHECK(found.label(3, 0) != found.label(0, 0));  // degree-0 node 3 as well
  CHECK(found.label(0, 0) == found.label(1, 0));
  CHECK(found.label(0, 0) == found.label(2, 0));
}
