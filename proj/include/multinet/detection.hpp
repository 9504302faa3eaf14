#pragma once

#include <cstdint>
#include <vector>

#include "multinet/core.hpp"
#include "multinet/network.hpp"
#include "multinet/rng.hpp"

namespace multinet {

// Which layer pairs are coupled by the uniform diagonal interlayer term:
// ordinal couples consecutive layers only, categorical couples every pair.
enum class CouplingTopology { ordinal, categorical };

// Move selection in the two-phase maximization: max_gain always takes the
// best strictly improving move (ties broken toward the lowest community id);
// proportional_gain picks among strictly improving moves with probability
// proportional to the improvement, and shuffles the visit order per sweep.
enum class MoveRule { max_gain, proportional_gain };

struct ModularityConfig {
  double omega = 1.0;       // interlayer coupling strength, >= 0
  CouplingTopology topology = CouplingTopology::ordinal;
  double resolution = 1.0;  // per-layer null-model scale, > 0
};

// Multilayer modularity with uniform diagonal coupling: per layer a
// Newman-Girvan term over intralayer edges, plus omega for every coupled
// copy of the same node that shares a community.  Both the edge mass and the
// coupling mass enter the normalization:
//   2 mu_tot = sum_a 2 m_a + 2 * omega * (number of coupled state-node pairs).
// Requires a single-aspect shape and a network with intralayer edges only.
// Layers without edges contribute no null term.  Returns 0 for an empty
// network with omega = 0.
double multilayer_modularity(const MultilayerPartition& partition,
                             const MultilayerNetwork& network,
                             const ModularityConfig& config);

// Optimization diagnostics: unnormalized quality (2 mu_tot * Q) after every
// sweep, and the same quantity immediately before and after each aggregation
// step.  Accepted moves must strictly increase quality, and aggregation must
// preserve it exactly (up to rounding).
struct GenLouvainTrace {
  std::vector<double> sweep_quality;
  std::vector<double> aggregate_before;
  std::vector<double> aggregate_after;
  int phases = 0;
  std::int64_t moves = 0;
};

// Two-phase (Louvain-style) maximization of multilayer modularity.  Phase 1
// sweeps the current graph's nodes in ascending index order (shuffled per
// sweep for proportional_gain), moving each node between adjacent communities
// under the configured rule; phase 2 collapses communities into super-nodes
// and repeats.  Stops when a full sweep makes no move.  Nodes with no edges
// and no coupling remain singletons.  The rng is consumed only by
// proportional_gain; max_gain is fully deterministic.
MultilayerPartition genlouvain(const MultilayerNetwork& network,
                               const ModularityConfig& config, MoveRule rule,
                               RngStream& rng,
                               GenLouvainTrace* trace = nullptr);

}  // namespace multinet
