#include "multinet/detection.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace multinet {

namespace {

// Gains this small are treated as zero so rounding noise cannot drive
// endless move cycles.
constexpr double kGainEps = 1e-9;

void check_detection_inputs(const MultilayerNetwork& network,
                            const ModularityConfig& config) {
  if (network.shape().aspects().size() != 1) {
    throw std::invalid_argument(
        "modularity: only single-aspect shapes are supported");
  }
  if (network.interlayer_edge_count() != 0) {
    throw std::invalid_argument(
        "modularity: network must contain intralayer edges only (coupling is "
        "configured, not stored as edges)");
  }
  if (network.directed()) {
    throw std::invalid_argument("modularity: network must be undirected");
  }
  if (!(config.omega >= 0)) {
    throw std::invalid_argument("modularity: omega must be >= 0");
  }
  if (!(config.resolution > 0)) {
    throw std::invalid_argument("modularity: resolution must be > 0");
  }
}

// Number of coupled state-node pairs under the given topology.
double coupling_pair_count(const MultilayerShape& shape,
                           CouplingTopology topology) {
  const double n = static_cast<double>(shape.node_count());
  const double l = static_cast<double>(shape.layer_count());
  return topology == CouplingTopology::ordinal ? n * (l - 1.0)
                                               : n * l * (l - 1.0) / 2.0;
}

// Per-state-node intralayer strength and per-layer edge mass (2 m_a).
struct LayerMass {
  std::vector<double> strength;   // by supra index
  std::vector<double> twice_m;    // by flat layer
};

LayerMass intralayer_mass(const MultilayerNetwork& network) {
  const MultilayerShape& shape = network.shape();
  LayerMass mass;
  mass.strength.assign(shape.state_node_count(), 0.0);
  mass.twice_m.assign(shape.layer_count(), 0.0);
  for (const MultilayerEdge& e : network.edges()) {
    mass.strength[e.a] += e.weight;
    mass.strength[e.b] += e.weight;
    mass.twice_m[shape.supra_layer(e.a)] += 2.0 * e.weight;
  }
  return mass;
}

}  // namespace

double multilayer_modularity(const MultilayerPartition& partition,
                             const MultilayerNetwork& network,
                             const ModularityConfig& config) {
  check_detection_inputs(network, config);
  const MultilayerShape& shape = network.shape();
  if (!(partition.shape() == shape)) {
    throw std::invalid_argument("modularity: partition and network shapes differ");
  }
  const int n = shape.node_count();
  const int l = shape.layer_count();
  const LayerMass mass = intralayer_mass(network);

  double numerator = 0;
  for (const MultilayerEdge& e : network.edges()) {
    if (partition.label_at(e.a) == partition.label_at(e.b)) {
      numerator += 2.0 * e.weight;
    }
  }
  for (int layer = 0; layer < l; ++layer) {
    if (!(mass.twice_m[layer] > 0)) continue;  // empty layer: no null term
    std::unordered_map<int, double> community_strength;
    for (int node = 0; node < n; ++node) {
      const int supra = shape.supra_index(node, layer);
      community_strength[partition.label_at(supra)] += mass.strength[supra];
    }
    double squares = 0;
    for (const auto& [label, k] : community_strength) squares += k * k;
    numerator -= config.resolution * squares / mass.twice_m[layer];
  }
  auto add_coupling = [&](int layer_a, int layer_b) {
    for (int node = 0; node < n; ++node) {
      if (partition.label(node, layer_a) == partition.label(node, layer_b)) {
        numerator += 2.0 * config.omega;
      }
    }
  };
  if (config.topology == CouplingTopology::ordinal) {
    for (int layer = 0; layer + 1 < l; ++layer) add_coupling(layer, layer + 1);
  } else {
    for (int a = 0; a < l; ++a) {
      for (int b = a + 1; b < l; ++b) add_coupling(a, b);
    }
  }

  const double denominator =
      std::accumulate(mass.twice_m.begin(), mass.twice_m.end(), 0.0) +
      2.0 * config.omega * coupling_pair_count(shape, config.topology);
  if (!(denominator > 0)) return 0.0;
  return numerator / denominator;
}

namespace {

// The graph the two-phase heuristic operates on.  Nodes start as state nodes
// and become community super-nodes after each aggregation.  Coupling is
// materialized as ordinary edges; the null term only sees the per-layer
// intralayer strengths, which aggregation adds up.  selfw carries the
// internal (ordered-pair) edge mass of a super-node so that the quality of an
// aggregated graph equals the quality of the original graph under the
// expanded partition.
struct WorkingGraph {
  int node_count = 0;
  std::vector<std::vector<std::pair<int, double>>> adj;  // no self entries
  std::vector<double> selfw;
  std::vector<std::vector<std::pair<int, double>>> strength;  // (layer, k)
};

class Optimizer {
 public:
  Optimizer(const MultilayerNetwork& network, const ModularityConfig& config)
      : config_(config), layer_count_(network.shape().layer_count()) {
    const MultilayerShape& shape = network.shape();
    const int n = shape.node_count();
    const int l = layer_count_;
    const LayerMass mass = intralayer_mass(network);
    inv_twice_m_.assign(l, 0.0);
    for (int layer = 0; layer < l; ++layer) {
      if (mass.twice_m[layer] > 0) inv_twice_m_[layer] = 1.0 / mass.twice_m[layer];
    }

    graph_.node_count = shape.state_node_count();
    graph_.adj.resize(graph_.node_count);
    graph_.selfw.assign(graph_.node_count, 0.0);
    graph_.strength.resize(graph_.node_count);
    for (const MultilayerEdge& e : network.edges()) {
      graph_.adj[e.a].push_back({e.b, e.weight});
      graph_.adj[e.b].push_back({e.a, e.weight});
    }
    for (int supra = 0; supra < graph_.node_count; ++supra) {
      if (mass.strength[supra] > 0) {
        graph_.strength[supra] = {{shape.supra_layer(supra), mass.strength[supra]}};
      }
    }
    if (config.omega > 0) {
      auto couple = [&](int node, int layer_a, int layer_b) {
        const int a = shape.supra_index(node, layer_a);
        const int b = shape.supra_index(node, layer_b);
        graph_.adj[a].push_back({b, config.omega});
        graph_.adj[b].push_back({a, config.omega});
      };
      for (int node = 0; node < n; ++node) {
        if (config.topology == CouplingTopology::ordinal) {
          for (int layer = 0; layer + 1 < l; ++layer) {
            couple(node, layer, layer + 1);
          }
        } else {
          for (int a = 0; a < l; ++a) {
            for (int b = a + 1; b < l; ++b) couple(node, a, b);
          }
        }
      }
    }
  }

  // Unnormalized quality (2 mu_tot * Q) of the current graph under the
  // current community assignment.
  double quality() const {
    double q = 0;
    for (int u = 0; u < graph_.node_count; ++u) {
      q += graph_.selfw[u];
      for (const auto& [v, w] : graph_.adj[u]) {
        if (community_[u] == community_[v]) q += w;
      }
    }
    std::vector<double> squares(layer_count_, 0.0);
    for (std::size_t c = 0; c < community_strength_.size() / layer_count_; ++c) {
      for (int layer = 0; layer < layer_count_; ++layer) {
        const double k = community_strength_[c * layer_count_ + layer];
        squares[layer] += k * k;
      }
    }
    for (int layer = 0; layer < layer_count_; ++layer) {
      q -= config_.resolution * squares[layer] * inv_twice_m_[layer];
    }
    return q;
  }

  MultilayerPartition run(const MultilayerShape& shape, MoveRule rule,
                          RngStream& rng, GenLouvainTrace* trace) {
    std::vector<int> assignment(graph_.node_count);
    std::iota(assignment.begin(), assignment.end(), 0);
    while (true) {
      reset_communities();
      const std::int64_t moves = phase_one(rule, rng, trace);
      if (trace != nullptr) {
        ++trace->phases;
        trace->moves += moves;
      }
      if (moves == 0) break;
      if (trace != nullptr) trace->aggregate_before.push_back(quality());
      const int before = graph_.node_count;
      const std::vector<int> new_id = aggregate();
      for (int& a : assignment) a = new_id[community_[a]];
      reset_communities();
      if (trace != nullptr) trace->aggregate_after.push_back(quality());
      // A sweep can move nodes yet end with every community a singleton; the
      // graph is then unchanged and another phase would loop forever.
      if (graph_.node_count == before) break;
    }
    // Final communities, compressed to labels 0..C-1 in community-id order.
    std::vector<int> labels(assignment.size());
    std::vector<int> present;
    present.reserve(graph_.node_count);
    for (int u = 0; u < graph_.node_count; ++u) present.push_back(community_[u]);
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      const int c = community_[assignment[i]];
      labels[i] = static_cast<int>(
          std::lower_bound(present.begin(), present.end(), c) -
          present.begin());
    }
    return MultilayerPartition(shape, std::move(labels));
  }

 private:
  void reset_communities() {
    community_.resize(graph_.node_count);
    std::iota(community_.begin(), community_.end(), 0);
    community_strength_.assign(
        static_cast<std::size_t>(graph_.node_count) * layer_count_, 0.0);
    for (int u = 0; u < graph_.node_count; ++u) {
      for (const auto& [layer, k] : graph_.strength[u]) {
        community_strength_[static_cast<std::size_t>(u) * layer_count_ +
                            layer] += k;
      }
    }
  }

  void add_strength(int community, int u, double sign) {
    for (const auto& [layer, k] : graph_.strength[u]) {
      community_strength_[static_cast<std::size_t>(community) * layer_count_ +
                          layer] += sign * k;
    }
  }

  // Score of placing u into community c after u's strength has been removed
  // from its own community: edge mass toward c minus the null-model penalty.
  double placement_score(int u, int c, double link_weight) const {
    double null_term = 0;
    for (const auto& [layer, k] : graph_.strength[u]) {
      null_term +=
          k *
          community_strength_[static_cast<std::size_t>(c) * layer_count_ +
                              layer] *
          inv_twice_m_[layer];
    }
    return 2.0 * (link_weight - config_.resolution * null_term);
  }

  std::int64_t phase_one(MoveRule rule, RngStream& rng,
                         GenLouvainTrace* trace) {
    std::int64_t total_moves = 0;
    std::vector<int> order(graph_.node_count);
    std::iota(order.begin(), order.end(), 0);
    bool improved = true;
    while (improved) {
      improved = false;
      if (rule == MoveRule::proportional_gain) rng.shuffle(order);
      for (const int u : order) {
        const int c = community_[u];
        link_.clear();
        for (const auto& [v, w] : graph_.adj[u]) link_[community_[v]] += w;
        add_strength(c, u, -1.0);
        const double stay = placement_score(u, c, link_[c]);  // link_[c] may insert 0
        int target = c;
        if (rule == MoveRule::max_gain) {
          double best_gain = 0;
          for (const auto& [d, w] : link_) {
            if (d == c) continue;
            const double gain = placement_score(u, d, w) - stay;
            if (gain <= kGainEps) continue;  // only strictly improving moves
            const bool better = target == c || gain > best_gain + kGainEps;
            const bool tied = target != c && gain >= best_gain - kGainEps;
            if (better || (tied && d < target)) {
              target = d;
              if (gain > best_gain) best_gain = gain;
            }
          }
        } else {
          candidates_.clear();
          double total = 0;
          for (const auto& [d, w] : link_) {
            if (d == c) continue;
            const double gain = placement_score(u, d, w) - stay;
            if (gain > kGainEps) {
              total += gain;
              candidates_.push_back({d, total});
            }
          }
          if (!candidates_.empty()) {
            const double r = rng.uniform() * total;
            for (const auto& [d, cum] : candidates_) {
              if (r < cum) {
                target = d;
                break;
              }
            }
            if (target == c) target = candidates_.back().first;
          }
        }
        add_strength(target, u, 1.0);
        if (target != c) {
          community_[u] = target;
          ++total_moves;
          improved = true;
        }
      }
      if (trace != nullptr) trace->sweep_quality.push_back(quality());
    }
    return total_moves;
  }

  // Collapse each community into one node; returns old-community -> new-node.
  std::vector<int> aggregate() {
    std::vector<int> present = community_;
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    const int next_count = static_cast<int>(present.size());
    std::vector<int> new_id(graph_.node_count, -1);
    for (int i = 0; i < next_count; ++i) new_id[present[i]] = i;

    WorkingGraph next;
    next.node_count = next_count;
    next.adj.resize(next_count);
    next.selfw.assign(next_count, 0.0);
    next.strength.resize(next_count);
    std::vector<std::map<int, double>> edges(next_count);
    std::vector<std::map<int, double>> strengths(next_count);
    for (int u = 0; u < graph_.node_count; ++u) {
      const int cu = new_id[community_[u]];
      next.selfw[cu] += graph_.selfw[u];
      for (const auto& [layer, k] : graph_.strength[u]) strengths[cu][layer] += k;
      for (const auto& [v, w] : graph_.adj[u]) {
        const int cv = new_id[community_[v]];
        if (cu == cv) {
          next.selfw[cu] += w;  // each internal edge visited from both ends
        } else {
          edges[cu][cv] += w;
        }
      }
    }
    for (int u = 0; u < next_count; ++u) {
      next.adj[u].assign(edges[u].begin(), edges[u].end());
      next.strength[u].assign(strengths[u].begin(), strengths[u].end());
    }
    graph_ = std::move(next);
    return new_id;
  }

  ModularityConfig config_;
  int layer_count_;
  std::vector<double> inv_twice_m_;
  WorkingGraph graph_;
  std::vector<int> community_;
  std::vector<double> community_strength_;  // [community * layers + layer]
  std::unordered_map<int, double> link_;
  std::vector<std::pair<int, double>> candidates_;
};

}  // namespace

MultilayerPartition genlouvain(const MultilayerNetwork& network,
                               const ModularityConfig& config, MoveRule rule,
                               RngStream& rng, GenLouvainTrace* trace) {
  check_detection_inputs(network, config);
  Optimizer optimizer(network, config);
  return optimizer.run(network.shape(), rule, rng, trace);
}

}  // namespace multinet
