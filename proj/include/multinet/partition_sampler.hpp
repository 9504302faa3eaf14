#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "multinet/core.hpp"
#include "multinet/dependency.hpp"
#include "multinet/nulldist.hpp"
#include "multinet/rng.hpp"

namespace multinet {

struct SamplerConfig {
  // Number of full update passes.  0 means the default: one pass when every
  // aspect is ordered (a single pass in update order already produces an
  // exact sample), otherwise 200.  Fully ordered shapes are always forced to
  // a single pass.
  int iterations = 0;
  int chains = 1;
  std::uint64_t seed = 0;
};

// Per-chain record of how much each update pass changed: fraction of state
// nodes whose label survived the pass.  Purely diagnostic; never used as a
// stopping rule.
struct PartitionChainDiagnostics {
  std::vector<std::vector<double>> sweep_agreement;  // [chain][sweep]
};

// Every state node drawn independently from its layer's null distribution.
MultilayerPartition sample_null_partition(const NullSet& nulls,
                                          const MultilayerShape& shape,
                                          RngStream& rng);

// One update of a single state node: with probability equal to the incoming
// copy mass the label of a source (chosen proportionally to the weights, in
// source order) is copied; otherwise a label is drawn from the layer's null.
// Consumes exactly one uniform variate, so replay depends only on the seed
// and the update schedule.
int update_state_node(const MultilayerPartition& state,
                      const InterlayerDependencyTensor& dependencies,
                      const NullSet& nulls, StateNode target, RngStream& rng);

// One full pass: every state node updated exactly once, layers visited in
// `layer_order`, nodes in ascending order within a layer.  Updates are
// sequential, so later updates see earlier results.
MultilayerPartition gibbs_sweep(const MultilayerPartition& state,
                                const InterlayerDependencyTensor& dependencies,
                                const NullSet& nulls,
                                std::span<const int> layer_order,
                                RngStream& rng);

// Full sampling run: chains independent initializations (from the null)
// followed by the configured number of passes.  Chain k draws from the
// derived stream (seed, "partition/chain", k), so results are reproducible
// per chain and independent of how chains are scheduled.
std::vector<MultilayerPartition> sample_partition(
    const LayerDependencyTensor& dependencies, const NullSet& nulls,
    const MultilayerShape& shape, const SamplerConfig& config,
    PartitionChainDiagnostics* diagnostics = nullptr);

std::vector<MultilayerPartition> sample_partition(
    const InterlayerDependencyTensor& dependencies, const NullSet& nulls,
    const SamplerConfig& config,
    PartitionChainDiagnostics* diagnostics = nullptr);

// Direct sampler for a single ordered aspect with chain dependence: layer 1
// from the null, then each layer copies per node from its predecessor with
// probability p[layer-1] or redraws from the null.  Distributionally equal to
// the general sampler with build_temporal(l, p).
MultilayerPartition sample_temporal_partition(std::span<const double> p,
                                              const NullSet& nulls,
                                              const MultilayerShape& shape,
                                              RngStream& rng);

// --- Closed forms for the chain-dependence case --------------------------
//
// All take 0-based layer indices and labels and a copy-probability vector p
// of length l-1 (p[b-1] couples layer b to layer b-1).

// P[state node in `layer` has `label`], marginally over the process.
double temporal_marginal_probability(std::span<const double> p,
                                     const NullSet& nulls, int layer,
                                     int label);

// Probability that a label carried by m of the n nodes in layer-1 vanishes
// in the next layer, where null_prob is the next layer's null probability of
// that label and copy_p couples the two layers.
double temporal_disappearance_probability(double copy_p, double null_prob,
                                          int nodes_with_label, int node_count);

// Probability that at least one node of the next layer picks up a label
// outside the currently present set, where present_mass is the next layer's
// null mass on the present labels.
double temporal_appearance_probability(double copy_p, double present_mass,
                                       int node_count);
// Overload computing present_mass from the previous layer's assignment.
double temporal_appearance_probability(double copy_p, const NullSet& nulls,
                                       int next_layer,
                                       std::span<const int> previous_labels,
                                       int node_count);

// Fraction of state nodes on which two partitions of the same shape agree.
double label_agreement(const MultilayerPartition& a,
                       const MultilayerPartition& b);

}  // namespace multinet
