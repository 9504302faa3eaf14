#pragma once

#include <span>
#include <vector>

#include "multinet/core.hpp"

namespace multinet {

// Normalized mutual information of two labelings of the same node set,
// I(A;B) / H(A,B) with base-2 entropies computed from the exact integer
// counts.  Two labelings with zero joint entropy (both constant) are
// considered identical and score 1.  Result lies in [0, 1] and is invariant
// under relabeling either argument.
double nmi_joint(std::span<const int> a, std::span<const int> b);

// Per-layer comparison of detected partitions against a reference.
struct LayerNmiSummary {
  std::vector<double> per_layer;  // mean over the detected partitions
  double mean = 0;                // over layers and detected partitions
};

LayerNmiSummary per_layer_mean_nmi(const MultilayerPartition& reference,
                                   std::span<const MultilayerPartition> found);
LayerNmiSummary per_layer_mean_nmi(const MultilayerPartition& reference,
                                   const MultilayerPartition& found);

// Layer-by-layer similarity structure of a single multilayer partition:
// entry (a, b) is the NMI of the partitions induced on layers a and b.
// Symmetric with unit diagonal.
std::vector<std::vector<double>> pairwise_layer_nmi(
    const MultilayerPartition& partition);

}  // namespace multinet
