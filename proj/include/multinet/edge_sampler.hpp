#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "multinet/core.hpp"
#include "multinet/network.hpp"
#include "multinet/rng.hpp"

namespace multinet {

// Continuous truncated power law on [minimum, maximum] with density
// proportional to x^exponent for a negative exponent < -1.  Sampling is by
// CDF inversion, so one uniform variate produces one value.
class TruncatedPowerLaw {
 public:
  TruncatedPowerLaw(double exponent, double minimum, double maximum);

  double exponent() const { return exponent_; }
  double minimum() const { return min_; }
  double maximum() const { return max_; }

  double normalization() const;  // density = normalization * x^exponent
  double cdf(double x) const;
  double quantile(double u) const;  // inverse CDF, u in [0, 1)
  double mean() const;
  double sample(RngStream& rng) const { return quantile(rng.uniform()); }

 private:
  double exponent_;  // negative; density ~ x^exponent
  double min_;
  double max_;
};

// One expected degree per state node, drawn independently.
std::vector<double> sample_expected_degrees(const TruncatedPowerLaw& degrees,
                                            const MultilayerShape& shape,
                                            RngStream& rng);

// Degree-corrected block-model parameters for intralayer edges.  Given a
// partition and per-state-node expected degrees, each layer is divided into
// blocks by community pair; mixing_mu interpolates between purely planted
// structure (0) and a degree-preserving random layer (1).
//
// Per layer a: kappa[r] is the expected degree total of community r, w is
// half the layer's degree total, and sigma gives each member's share of its
// community's total.  The block weight for communities r, s of one layer is
//   W(r, s) = (1 - mu) * [r == s] * kappa[r] + mu * kappa[r] * kappa[s] / (2 w);
// summing W(r, s) over s recovers kappa[r], and the diagonal weight is twice
// the expected number of edges inside the community.
class DcsbmParams {
 public:
  struct LayerBlocks {
    std::vector<int> community_labels;           // sorted, present labels
    std::vector<std::vector<int>> members;       // per community, sorted nodes
    std::vector<double> kappa;                   // per community
    std::vector<std::vector<double>> cumulative_sigma;  // per community
    double w = 0;                                // half the degree total
  };

  DcsbmParams(MultilayerPartition partition, std::vector<double> expected_degrees,
              double mixing_mu);

  const MultilayerPartition& partition() const { return partition_; }
  const std::vector<double>& expected_degrees() const {
    return expected_degrees_;
  }
  double mixing_mu() const { return mu_; }
  const LayerBlocks& layer(int flat_layer) const {
    return layers_.at(flat_layer);
  }

  double block_weight(int flat_layer, int community_r, int community_s) const;

  // Expected-edge intensity for one pair of state nodes (zero across layers);
  // in the Bernoulli sampling mode this is the edge probability before
  // clamping at 1.
  double edge_probability(StateNode x, StateNode y) const;

  int community_index(int flat_layer, int label) const;  // -1 if absent

 private:
  MultilayerPartition partition_;
  std::vector<double> expected_degrees_;
  double mu_;
  std::vector<LayerBlocks> layers_;
};

DcsbmParams build_dcsbm(const MultilayerPartition& partition,
                        std::span<const double> expected_degrees,
                        double mixing_mu);

struct SampleNetworkOptions {
  // A block whose weight exceeds this fraction of its pair count is sampled
  // edge-by-edge (Bernoulli per pair) instead of by Poisson total plus
  // endpoint draws.
  double bernoulli_threshold = 0.25;
  // The Poisson mode abandons a block and falls back to Bernoulli sampling
  // after budget_factor * m endpoint draws fail to place m distinct edges.
  double rejection_budget_factor = 100.0;
};

struct SampleNetworkStats {
  std::int64_t bernoulli_blocks = 0;   // dense blocks sampled pairwise
  std::int64_t fallback_blocks = 0;    // rejection budget exhausted
  std::int64_t clamped_pairs = 0;      // pair intensities truncated at 1
  std::int64_t degenerate_blocks = 0;  // no placeable pair (single member)
};

// One sampled network: per block, the edge total is Poisson with mean W (off-
// diagonal) or W/2 (diagonal) and endpoints are drawn by community share,
// rejecting self-edges and repeats; dense blocks use independent pair coins
// with probability min(1, sigma_i W sigma_j).  Block streams are derived from
// (seed, layer, community pair), so results do not depend on traversal order.
MultilayerNetwork sample_network(const DcsbmParams& params, std::uint64_t seed,
                                 const SampleNetworkOptions& options = {},
                                 SampleNetworkStats* stats = nullptr);

// --- Directed interlayer variant -----------------------------------------
//
// Expected-degree input for directed edges between layer pairs:
// out_expected[supra(i, a) * l + b] is the expected number of edges from
// state node (i, a) into layer b, and in_expected[supra(j, b) * l + a] the
// expected number from layer a into (j, b).  For each layer pair the out and
// in totals must agree (within tolerance); that common total is w(a, b).
class DirectedDcsbmParams {
 public:
  // Shares for one ordered layer pair (a, b): the out side lives in layer a,
  // the in side in layer b.  Communities are indexed by the sorted union of
  // the labels appearing on either side.
  struct CommunityShares {
    std::vector<int> community_labels;
    std::vector<std::vector<int>> members_out;  // per community, nodes in a
    std::vector<std::vector<int>> members_in;   // per community, nodes in b
    std::vector<double> kappa_out;  // community totals, a -> b direction
    std::vector<double> kappa_in;
    std::vector<std::vector<double>> cumulative_sigma_out;
    std::vector<std::vector<double>> cumulative_sigma_in;
    double w = 0;
  };

  DirectedDcsbmParams(MultilayerPartition partition,
                      std::vector<double> out_expected,
                      std::vector<double> in_expected, double mixing_mu);

  const MultilayerPartition& partition() const { return partition_; }
  double mixing_mu() const { return mu_; }

  // Shares for ordered layer pair (source a, target b); null when w == 0.
  const CommunityShares* pair(int source_layer, int target_layer) const;

  double block_weight(int source_layer, int target_layer, int community_r,
                      int community_s) const;
  double edge_probability(StateNode from, StateNode to) const;

 private:
  MultilayerPartition partition_;
  double mu_;
  int layer_count_;
  std::vector<double> out_expected_;
  std::vector<double> in_expected_;
  std::vector<CommunityShares> pairs_;  // [source * l + target]
  std::vector<bool> active_;
};

DirectedDcsbmParams build_directed_interlayer_dcsbm(
    const MultilayerPartition& partition, std::span<const double> out_expected,
    std::span<const double> in_expected, double mixing_mu);

MultilayerNetwork sample_directed_network(const DirectedDcsbmParams& params,
                                          std::uint64_t seed,
                                          const SampleNetworkOptions& options = {},
                                          SampleNetworkStats* stats = nullptr);

}  // namespace multinet
