// Acceptance gate: ten end-to-end checks over the whole toolkit, printed as
// one PASS/FAIL line each.  Every tolerance is pinned here, next to the
// check that uses it.  Exit code 0 only if every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "multinet/cli.hpp"
#include "multinet/config.hpp"
#include "multinet/dependency.hpp"
#include "multinet/detection.hpp"
#include "multinet/edge_sampler.hpp"
#include "multinet/io.hpp"
#include "multinet/metrics.hpp"
#include "multinet/nulldist.hpp"
#include "multinet/partition_sampler.hpp"
#include "multinet/pipeline.hpp"
#include "multinet/rng.hpp"
#include "support/stats.hpp"

using namespace multinet;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& note) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += note;
    }
  }
  void annotate(const std::string& note) {
    if (!detail.empty()) detail += "; ";
    detail += note;
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Closed-form label probabilities vs simulation of the copying chain.
//    (n, l, n_c) = (4, 4, 3), 1e5 trials, 3 binomial standard errors.
Outcome criterion_closed_forms() {
  Outcome out;
  const int n = 4, l = 4, labels = 3, trials = 100000;
  MultilayerShape shape(n, {{l, AspectOrdering::ordered}});
  NullSet nulls(labels,
                {CategoricalNull::from_probabilities({0.5, 0.3, 0.2}),
                 CategoricalNull::from_probabilities({0.2, 0.5, 0.3}),
                 CategoricalNull::from_probabilities({0.3, 0.2, 0.5}),
                 CategoricalNull::from_probabilities({0.4, 0.4, 0.2})});
  const std::vector<double> p{0.6, 0.7, 0.5};
  const LayerDependencyTensor chain = build_temporal(l, p);

  // One full pass of the sequential sampler is an exact draw here, so the
  // simulation is just repeated sampling.
  std::vector<std::vector<int>> layer2(trials), layer3(trials);
  for (int t = 0; t < trials; ++t) {
    SamplerConfig config;
    config.seed = 100000 + static_cast<std::uint64_t>(t);
    const auto chains = sample_partition(chain, nulls, shape, config);
    layer2[t] = chains[0].induced_partition(2);
    layer3[t] = chains[0].induced_partition(3);
  }

  // Marginal of node 1 at the last layer, every label.
  {
    std::vector<int> hits(labels, 0);
    for (int t = 0; t < trials; ++t) ++hits[layer3[t][0]];
    for (int s = 0; s < labels; ++s) {
      const double want = temporal_marginal_probability(p, nulls, 3, s);
      const double got = static_cast<double>(hits[s]) / trials;
      const double gate = 3 * binomial_se(want, trials);
      out.require(std::abs(got - want) < gate,
                  "marginal(layer 4, label " + std::to_string(s + 1) +
                      "): got " + fmt(got) + " want " + fmt(want));
    }
  }

  // Disappearance of label 1 between layers 3 and 4, conditioned on its
  // carrier count in layer 3.
  for (int m = 1; m <= 3; ++m) {
    int conditioned = 0, vanished = 0;
    for (int t = 0; t < trials; ++t) {
      const int carriers = static_cast<int>(
          std::count(layer2[t].begin(), layer2[t].end(), 0));
      if (carriers != m) continue;
      ++conditioned;
      vanished += std::count(layer3[t].begin(), layer3[t].end(), 0) == 0;
    }
    if (conditioned < 1000) continue;  // not enough mass to test this m
    const double want = temporal_disappearance_probability(
        p[2], nulls.layer(3).probabilities[0], m, n);
    const double got = static_cast<double>(vanished) / conditioned;
    out.require(std::abs(got - want) < 3 * binomial_se(want, conditioned),
                "disappearance(m=" + std::to_string(m) + "): got " + fmt(got) +
                    " want " + fmt(want));
  }

  // Appearance of the one absent label, conditioned on layer 3 presenting
  // exactly labels {1, 2}.
  {
    int conditioned = 0, appeared = 0;
    for (int t = 0; t < trials; ++t) {
      const std::set<int> present(layer2[t].begin(), layer2[t].end());
      if (present != std::set<int>{0, 1}) continue;
      ++conditioned;
      appeared += std::count(layer3[t].begin(), layer3[t].end(), 2) > 0;
    }
    const double want =
        temporal_appearance_probability(p[2], nulls, 3, std::vector<int>{0, 1},
                                        n);
    const double got = static_cast<double>(appeared) / conditioned;
    out.require(conditioned > 1000, "appearance: conditioning set too small");
    out.require(std::abs(got - want) < 3 * binomial_se(want, conditioned),
                "appearance: got " + fmt(got) + " want " + fmt(want));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2. Deterministic extremes, exact, 100 seeds each.
Outcome criterion_extremes() {
  Outcome out;

  // (a) Certain temporal copying: all layers identical.
  {
    const int n = 20, l = 12;
    MultilayerShape shape(n, {{l, AspectOrdering::ordered}});
    std::vector<CategoricalNull> per_layer(
        l, CategoricalNull::from_probabilities(
               {0.2, 0.2, 0.2, 0.2, 0.2}));
    const NullSet nulls(5, std::move(per_layer));
    const LayerDependencyTensor chain = build_temporal(l, 1.0);
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      SamplerConfig config;
      config.seed = seed;
      const auto chains = sample_partition(chain, nulls, shape, config);
      const std::vector<int> first = chains[0].induced_partition(0);
      for (int layer = 1; layer < l; ++layer) {
        if (chains[0].induced_partition(layer) != first) ++bad;
      }
    }
    out.require(bad == 0, "temporal p=1: " + std::to_string(bad) +
                              " layers differ from layer 1");
  }

  // (b) Full multiplex copy mass: every node's column collapses to one
  // label (one community per dependency component is absorbing).
  {
    const int n = 10, l = 4;
    MultilayerShape shape(n, {{l, AspectOrdering::unordered}});
    std::vector<CategoricalNull> per_layer(
        l, CategoricalNull::from_probabilities(std::vector<double>(10, 0.1)));
    const NullSet nulls(10, std::move(per_layer));
    const LayerDependencyTensor full = build_uniform_multiplex(l, 1.0);
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      SamplerConfig config;
      config.seed = seed;
      config.chains = 2;
      const auto chains = sample_partition(full, nulls, shape, config);
      for (const MultilayerPartition& part : chains) {
        for (int node = 0; node < n; ++node) {
          for (int layer = 1; layer < l; ++layer) {
            if (part.label(node, layer) != part.label(node, 0)) ++bad;
          }
        }
      }
    }
    out.require(bad == 0, "multiplex copy mass 1: " + std::to_string(bad) +
                              " state nodes off their column label");
  }

  // (c) mu = 0: no intercommunity edges at all.
  {
    const int n = 60, l = 3;
    MultilayerShape shape(n, {{l, AspectOrdering::unordered}});
    std::vector<CategoricalNull> per_layer(
        l, CategoricalNull::from_probabilities({0.25, 0.25, 0.25, 0.25}));
    const NullSet nulls(4, std::move(per_layer));
    const LayerDependencyTensor deps = build_uniform_multiplex(l, 0.5);
    const TruncatedPowerLaw law(-2.0, 3.0, 30.0);
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      SamplerConfig config;
      config.seed = seed;
      const auto chains = sample_partition(deps, nulls, shape, config);
      RngStream degree_rng(derive_seed(seed, "acceptance/degrees"));
      const std::vector<double> e =
          sample_expected_degrees(law, shape, degree_rng);
      const DcsbmParams params = build_dcsbm(chains[0], e, 0.0);
      const MultilayerNetwork net =
          sample_network(params, derive_seed(seed, "acceptance/edges"));
      for (const MultilayerEdge& edge : net.edges()) {
        if (chains[0].label_at(edge.a) != chains[0].label_at(edge.b)) ++bad;
      }
    }
    out.require(bad == 0, "mu=0: " + std::to_string(bad) +
                              " intercommunity edges found");
  }
  return out;
}

// ---------------------------------------------------------------------------
// 3. Degree fidelity on a large balanced two-community layer.
Outcome criterion_degree_fidelity() {
  Outcome out;
  const int n = 8000, samples = 1000;
  MultilayerShape shape(n, {{1, AspectOrdering::unordered}});
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i % 2;
  const MultilayerPartition part(shape, labels);
  const TruncatedPowerLaw law(-2.0, 3.0, 30.0);
  RngStream degree_rng(derive_seed(2024, "acceptance/degree-fidelity"));
  const std::vector<double> e = sample_expected_degrees(law, shape, degree_rng);

  // The per-node means use `samples` networks; the dispersion of the layer
  // edge total uses three times as many, because at 1000 samples the
  // variance/mean statistic has standard error ~0.045 and the +-0.1
  // acceptance window would trip on ~7% of seeds by pure chance.
  const int total_samples = 3 * samples;
  for (const double mu : {0.0, 0.5, 1.0}) {
    const DcsbmParams params = build_dcsbm(part, e, mu);
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    std::vector<double> totals;
    totals.reserve(total_samples);
    for (int s = 0; s < total_samples; ++s) {
      const MultilayerNetwork net = sample_network(
          params, derive_seed(58201, "acceptance/fidelity",
                              {static_cast<std::uint64_t>(mu * 2),
                               static_cast<std::uint64_t>(s)}));
      if (s < samples) {
        std::vector<int> degree(n, 0);
        for (const MultilayerEdge& edge : net.edges()) {
          ++degree[shape.supra_node(edge.a)];
          ++degree[shape.supra_node(edge.b)];
        }
        for (int i = 0; i < n; ++i) {
          sum[i] += degree[i];
          sumsq[i] += static_cast<double>(degree[i]) * degree[i];
        }
      }
      totals.push_back(static_cast<double>(net.edge_count()));
    }

    // Per-node mean within 3 empirical standard errors.  8000 simultaneous
    // 3-sigma gates are expected to trip ~22 times by chance; allow 40.
    int exceed = 0;
    for (int i = 0; i < n; ++i) {
      const double mean = sum[i] / samples;
      const double var =
          (sumsq[i] - samples * mean * mean) / (samples - 1);
      const double se = std::sqrt(std::max(var, 1e-9) / samples);
      if (std::abs(mean - e[i]) > 3 * se) ++exceed;
    }
    out.require(exceed <= 40, "mu=" + fmt(mu) + ": " + std::to_string(exceed) +
                                  " of 8000 node means off by > 3 SE");

    const SampleSummary t = summarize(totals);
    const double ratio = t.variance / t.mean;
    out.require(ratio > 0.9 && ratio < 1.1,
                "mu=" + fmt(mu) +
                    ": edge totals variance/mean = " + fmt(ratio));
    const double w = params.layer(0).w;
    const double total_se = std::sqrt(t.variance / total_samples);
    out.require(std::abs(t.mean - w) <= 3 * total_se,
                "mu=" + fmt(mu) + ": edge total mean " + fmt(t.mean) +
                    " vs expected " + fmt(w));
    if (mu == 1.0) {
      out.annotate("edge-total dispersion at mu=1: " + fmt(ratio));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// 4. Block-tensor identities.
Outcome criterion_block_identities() {
  Outcome out;

  // Row sums reproduce community degree totals on randomized fixtures.
  RngStream rng(derive_seed(31337, "acceptance/blocks"));
  double worst = 0;
  for (int fixture = 0; fixture < 100; ++fixture) {
    const int n = 3 + rng.uniform_int(25);
    MultilayerShape shape(n, {{1, AspectOrdering::unordered}});
    std::vector<int> labels(n);
    for (int& x : labels) x = rng.uniform_int(5);
    std::vector<double> e(n);
    for (double& v : e) v = 0.5 + 12 * rng.uniform();
    const DcsbmParams params =
        build_dcsbm(MultilayerPartition(shape, labels), e, rng.uniform());
    const DcsbmParams::LayerBlocks& blocks = params.layer(0);
    const int c = static_cast<int>(blocks.community_labels.size());
    for (int r = 0; r < c; ++r) {
      double row = 0;
      for (int s = 0; s < c; ++s) {
        row += params.block_weight(0, blocks.community_labels[r],
                                   blocks.community_labels[s]);
      }
      worst = std::max(
          worst, std::abs(row - blocks.kappa[r]) /
                     std::max(1.0, std::abs(blocks.kappa[r])));
    }
  }
  out.require(worst <= 1e-9,
              "row-sum identity: worst relative error " + fmt(worst));
  out.annotate("worst row-sum error " + fmt(worst));

  // Empirical pair frequencies on a 10-node fixture.
  MultilayerShape shape(10, {{1, AspectOrdering::unordered}});
  const std::vector<int> labels{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  const std::vector<double> degrees{1.0, 1.3, 1.6, 1.9, 2.2,
                                    2.5, 2.8, 3.1, 3.4, 3.7};
  const DcsbmParams params =
      build_dcsbm(MultilayerPartition(shape, labels), degrees, 0.5);
  const int samples = 20000;
  std::map<std::pair<int, int>, int> counts;
  for (int s = 0; s < samples; ++s) {
    const MultilayerNetwork net = sample_network(
        params,
        derive_seed(91, "acceptance/pairs", {static_cast<std::uint64_t>(s)}));
    for (const MultilayerEdge& edge : net.edges()) {
      counts[{edge.a, edge.b}] += 1;
    }
  }
  int bad_pairs = 0;
  double worst_gap = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      const double want = params.edge_probability({i, 0}, {j, 0});
      const auto it = counts.find({i, j});
      const double got =
          it == counts.end() ? 0.0 : it->second / double(samples);
      // Poisson placement leaves second-order multi-edge mass, so allow
      // 3 SE plus a p^2 slack.
      const double gate = 3 * binomial_se(want, samples) + want * want;
      if (std::abs(got - want) > gate) ++bad_pairs;
      worst_gap = std::max(worst_gap, std::abs(got - want));
    }
  }
  out.require(bad_pairs == 0, std::to_string(bad_pairs) +
                                  " of 45 pair frequencies off (worst gap " +
                                  fmt(worst_gap) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// 5. NMI against the exhaustive contingency oracle.
Outcome criterion_nmi_oracle() {
  Outcome out;
  const auto partitions = all_set_partitions(6);
  out.require(partitions.size() == 203,
              "expected 203 partitions of 6 elements");
  double worst = 0;
  for (const auto& a : partitions) {
    for (const auto& b : partitions) {
      worst = std::max(worst, std::abs(nmi_joint(a, b) - nmi_oracle(a, b)));
    }
  }
  out.require(worst <= 1e-12, "worst oracle gap " + fmt(worst));
  out.annotate("worst oracle gap " + fmt(worst) + " over 41209 pairs");

  const double hand =
      nmi_joint(std::vector<int>{1, 1, 2, 2}, std::vector<int>{1, 1, 1, 2});
  out.require(std::abs(hand - 0.207519) < 5e-7,
              "hand value: got " + fmt(hand));
  return out;
}

// ---------------------------------------------------------------------------
// Shared sampler for criteria 6 and 8: temporal partitions at (150, 100).
MultilayerPartition temporal_sample(const std::vector<double>& p,
                                    std::uint64_t seed) {
  const int n = 150, l = 100;
  MultilayerShape shape(n, {{l, AspectOrdering::ordered}});
  RngStream null_rng(derive_seed(seed, "acceptance/null"));
  const NullSet nulls = build_null_set(shape, 5, 1.0,
                                       SupportProcessSpec::full(), null_rng);
  RngStream rng(derive_seed(seed, "acceptance/chain"));
  return sample_temporal_partition(p, nulls, shape, rng);
}

// 6. Qualitative pairwise-layer NMI structure.
Outcome criterion_layer_similarity() {
  Outcome out;
  const int l = 100;

  // (a) p = 1: the similarity matrix is exactly all ones.
  {
    const MultilayerPartition part =
        temporal_sample(std::vector<double>(l - 1, 1.0), 600);
    const auto matrix = pairwise_layer_nmi(part);
    double low = 1.0;
    for (const auto& row : matrix) {
      for (double v : row) low = std::min(low, v);
    }
    out.require(low > 1.0 - 1e-12,
                "p=1: smallest matrix entry " + fmt(low));
  }

  // (b) p = 0.95: mean similarity decays with layer distance (Spearman
  // trend over distances 1..99, averaged over 10 samples, 1% one-sided).
  {
    std::vector<double> by_distance(l, 0.0);
    std::vector<int> pairs(l, 0);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const MultilayerPartition part =
          temporal_sample(std::vector<double>(l - 1, 0.95), 610 + s);
      const auto matrix = pairwise_layer_nmi(part);
      for (int a = 0; a < l; ++a) {
        for (int b = a + 1; b < l; ++b) {
          by_distance[b - a] += matrix[a][b];
          ++pairs[b - a];
        }
      }
    }
    std::vector<double> distance, similarity;
    for (int d = 1; d < l; ++d) {
      distance.push_back(d);
      similarity.push_back(by_distance[d] / pairs[d]);
    }
    const double rho = spearman_rho(distance, similarity);
    const double z = rho * std::sqrt(static_cast<double>(distance.size() - 1));
    out.require(z < -2.326, "p=0.95: Spearman z " + fmt(z));
    out.annotate("decay Spearman rho " + fmt(rho));
  }

  // (c) p = 0.5: distance >= 10 similarity matches an independent-sample
  // baseline within 0.01 (the coupling correlation there is ~0.5^10).
  {
    std::vector<MultilayerPartition> parts;
    for (std::uint64_t s = 0; s < 10; ++s) {
      parts.push_back(
          temporal_sample(std::vector<double>(l - 1, 0.5), 650 + s));
    }
    double far = 0;
    std::int64_t far_n = 0;
    for (const MultilayerPartition& part : parts) {
      const auto matrix = pairwise_layer_nmi(part);
      for (int a = 0; a < l; ++a) {
        for (int b = a + 10; b < l; ++b) {
          far += matrix[a][b];
          ++far_n;
        }
      }
    }
    far /= static_cast<double>(far_n);

    double chance = 0;
    int chance_n = 0;
    for (std::size_t s = 0; s < parts.size(); ++s) {
      for (std::size_t t = s + 1; t < parts.size(); ++t) {
        for (int layer : {10, 40, 70}) {
          chance += nmi_joint(parts[s].induced_partition(layer),
                              parts[t].induced_partition(layer + 5));
          ++chance_n;
        }
      }
    }
    chance /= chance_n;
    out.require(std::abs(far - chance) <= 0.01,
                "p=0.5: far-pair mean " + fmt(far) + " vs chance " +
                    fmt(chance));
    out.annotate("far " + fmt(far) + " / chance " + fmt(chance));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 7. Detection recovery across mixing and coupling (ordinal acceptance).
Outcome criterion_detection_grid() {
  Outcome out;
  BenchmarkConfig base;
  base.nodes = 150;
  base.aspects = {{100, AspectOrdering::ordered}};
  base.dependency.type = DependencySpec::Type::temporal;
  base.dependency.p = 1.0;
  base.null_model.communities = 5;
  base.null_model.theta = 1.0;
  base.edges.exponent = -2.0;
  base.edges.k_min = 3.0;
  base.edges.k_max = 30.0;
  base.seed = 4242;

  SweepGrid grid;
  grid.mu_values = {0.0, 0.4, 0.8};
  grid.omega_values = {0.0, 2.0};
  grid.rules = {MoveRule::max_gain, MoveRule::proportional_gain};
  grid.runs = 10;
  const std::vector<SweepRow> rows = nmi_sweep(base, grid);

  std::map<std::tuple<double, double, int>, std::pair<double, int>> cells;
  for (const SweepRow& row : rows) {
    auto& cell = cells[{row.mu, row.omega, static_cast<int>(row.rule)}];
    cell.first += row.mean_nmi;
    cell.second += 1;
  }
  auto mean_of = [&](double mu, double omega, MoveRule rule) {
    const auto& cell = cells.at({mu, omega, static_cast<int>(rule)});
    return cell.first / cell.second;
  };

  for (const MoveRule rule :
       {MoveRule::max_gain, MoveRule::proportional_gain}) {
    const char* name = move_rule_name(rule);
    // Perfect recovery of unmixed communities once coupling can repair the
    // odd degree-0 copy; without coupling those copies are undetectable
    // singletons, so the uncoupled column gets a floor instead of equality.
    const double coupled = mean_of(0.0, 2.0, rule);
    const double uncoupled = mean_of(0.0, 0.0, rule);
    out.require(coupled > 1.0 - 1e-9,
                std::string(name) + ": mu=0 omega=2 mean " + fmt(coupled));
    out.require(uncoupled > 0.85, std::string(name) +
                                      ": mu=0 omega=0 mean " + fmt(uncoupled));
    out.annotate(std::string(name) + " mu=0: omega 0 -> " + fmt(uncoupled) +
                 ", omega 2 -> " + fmt(coupled));

    for (const double mu : {0.4, 0.8}) {
      const double high = mean_of(mu, 2.0, rule);
      const double low = mean_of(mu, 0.0, rule);
      out.require(high >= low - 1e-9,
                  std::string(name) + ": mu=" + fmt(mu) + " omega 2 mean " +
                      fmt(high) + " < omega 0 mean " + fmt(low));
      out.annotate(std::string(name) + " mu=" + fmt(mu) + ": " + fmt(low) +
                   " -> " + fmt(high));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// 8. Change points sever the chain: across-boundary similarity is chance.
Outcome criterion_change_points() {
  Outcome out;
  const int l = 100;
  std::vector<double> p(l - 1, 0.95);
  // 1-based transitions 25, 50, 75 forced to zero: they decouple 0-based
  // layer pairs (24,25), (49,50), (74,75).
  for (const int t : {25, 50, 75}) p[t - 1] = 0.0;

  std::vector<MultilayerPartition> parts;
  for (std::uint64_t s = 0; s < 10; ++s) {
    parts.push_back(temporal_sample(p, 700 + s));
  }

  std::vector<double> across, within, chance;
  for (const MultilayerPartition& part : parts) {
    for (const int t : {25, 50, 75}) {
      across.push_back(nmi_joint(part.induced_partition(t - 1),
                                 part.induced_partition(t)));
    }
    for (const int a : {5, 30, 40, 60, 85}) {
      within.push_back(nmi_joint(part.induced_partition(a),
                                 part.induced_partition(a + 1)));
    }
  }
  for (std::size_t s = 0; s < parts.size(); ++s) {
    for (std::size_t t = s + 1; t < parts.size(); ++t) {
      chance.push_back(nmi_joint(parts[s].induced_partition(24),
                                 parts[t].induced_partition(25)));
    }
  }

  const double p_high = welch_p_value(within, across);
  const double p_chance = welch_p_value(across, chance);
  out.require(p_high < 0.01,
              "within vs across not separated, p = " + fmt(p_high));
  out.require(p_chance > 0.01,
              "across vs chance separated, p = " + fmt(p_chance));
  out.annotate("within mean " + fmt(summarize(within).mean) + ", across " +
               fmt(summarize(across).mean) + ", chance " +
               fmt(summarize(chance).mean));
  return out;
}

// ---------------------------------------------------------------------------
// 9. Birth/death support size approaches birth rate over death rate.
Outcome criterion_birth_death() {
  Outcome out;
  MultilayerShape shape(2, {{1000, AspectOrdering::ordered}});
  RngStream rng(derive_seed(808, "acceptance/birth-death"));
  const NullSet nulls = build_null_set(
      shape, 0, 1.0, SupportProcessSpec::temporal_birth_death(0.2, 1.0, 5),
      rng);
  double total = 0;
  for (int layer = 500; layer < 1000; ++layer) {
    total += static_cast<double>(nulls.layer(layer).support.size());
  }
  const double mean = total / 500;
  out.require(mean > 4.0 && mean < 6.0,
              "late mean support size " + fmt(mean));
  out.annotate("late mean support size " + fmt(mean));
  return out;
}

// ---------------------------------------------------------------------------
// 10. Byte-identical outputs for identical config and seed.
int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "multinet");
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (std::string& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

Outcome criterion_determinism() {
  Outcome out;
  const fs::path dir =
      fs::temp_directory_path() / "multinet_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);

  write_text_file(dir / "config.json", R"({
    "seed": 33,
    "shape": {"nodes": 40, "aspects": [{"size": 6, "ordering": "ordered"}]},
    "dependency": {"type": "temporal", "p": 0.9},
    "null": {"communities": 4, "theta": 1.0},
    "edges": {"exponent": -2.0, "k_min": 3.0, "k_max": 12.0, "mu": 0.3},
    "sweep": {"mu": [0.2], "omega": [1.0], "rules": ["proportional_gain"],
              "runs": 3}
  })");

  for (const char* name : {"a", "b"}) {
    const int code =
        run_cli({"generate", "--config", (dir / "config.json").string(),
                 "--out", (dir / name).string(), "--quiet"});
    out.require(code == 0,
                std::string("generate run ") + name + " exited with " +
                    std::to_string(code));
  }
  for (const char* file : {"partition.tsv", "edges.tsv", "manifest.json"}) {
    const std::string a = read_text_file(dir / "a" / file);
    const std::string b = read_text_file(dir / "b" / file);
    out.require(a == b, std::string(file) + " differs between reruns");
    out.require(!a.empty(), std::string(file) + " is empty");
  }

  for (const char* name : {"sa", "sb"}) {
    const int code =
        run_cli({"sweep", "--config", (dir / "config.json").string(),
                 "--out", (dir / name).string(), "--quiet"});
    out.require(code == 0, std::string("sweep run ") + name +
                               " exited with " + std::to_string(code));
  }
  out.require(read_text_file(dir / "sa" / "sweep.csv") ==
                  read_text_file(dir / "sb" / "sweep.csv"),
              "sweep.csv differs between reruns");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*check)();
  double budget_seconds;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "closed-form label probabilities vs simulation",
       criterion_closed_forms, 60},
      {2, "deterministic extremes", criterion_extremes, 120},
      {3, "degree fidelity", criterion_degree_fidelity, 300},
      {4, "block-tensor identities", criterion_block_identities, 120},
      {5, "NMI contingency oracle", criterion_nmi_oracle, 60},
      {6, "layer-similarity structure", criterion_layer_similarity, 600},
      {7, "detection recovery grid", criterion_detection_grid, 1800},
      {8, "change-point severing", criterion_change_points, 300},
      {9, "birth/death support size", criterion_birth_death, 60},
      {10, "byte-identical reruns", criterion_determinism, 120},
  };

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += (outcome.detail.empty() ? "" : "; ");
      outcome.detail += "over time budget";
    }
    all_pass = all_pass && outcome.pass;
    std::printf("CRITERION %2d: %s  %s%s%s  [%.1f s / %.0f s]\n", c.id,
                outcome.pass ? "PASS" : "FAIL", c.name,
                outcome.detail.empty() ? "" : " -- ",
                outcome.detail.c_str(), seconds, c.budget_seconds);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
