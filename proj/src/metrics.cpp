#include "multinet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace multinet {

namespace {

// Entropy in bits of a set of counts with total N:
// H = log2(N) - (1/N) sum c log2(c).  Working from the integer counts keeps
// the computation exact up to the final floating-point log/divide.
template <typename Map>
double entropy_bits(const Map& counts, std::size_t total) {
  double weighted = 0;
  for (const auto& [key, c] : counts) {
    weighted += static_cast<double>(c) * std::log2(static_cast<double>(c));
  }
  const double n = static_cast<double>(total);
  return std::log2(n) - weighted / n;
}

}  // namespace

double nmi_joint(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("nmi: labelings must cover the same nodes");
  }
  if (a.empty()) {
    throw std::invalid_argument("nmi: labelings must be nonempty");
  }
  std::unordered_map<int, std::size_t> count_a;
  std::unordered_map<int, std::size_t> count_b;
  std::unordered_map<std::int64_t, std::size_t> count_ab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++count_a[a[i]];
    ++count_b[b[i]];
    ++count_ab[(static_cast<std::int64_t>(a[i]) << 32) ^
               static_cast<std::uint32_t>(b[i])];
  }
  const double h_a = entropy_bits(count_a, a.size());
  const double h_b = entropy_bits(count_b, a.size());
  const double h_ab = entropy_bits(count_ab, a.size());
  if (h_ab <= 0) return 1.0;  // both labelings constant
  const double mi = h_a + h_b - h_ab;
  return std::clamp(mi / h_ab, 0.0, 1.0);
}

LayerNmiSummary per_layer_mean_nmi(const MultilayerPartition& reference,
                                   std::span<const MultilayerPartition> found) {
  if (found.empty()) {
    throw std::invalid_argument("per_layer_mean_nmi: no detected partitions");
  }
  for (const MultilayerPartition& f : found) {
    if (f.shape() != reference.shape()) {
      throw std::invalid_argument("per_layer_mean_nmi: shapes must match");
    }
  }
  const int l = reference.shape().layer_count();
  LayerNmiSummary summary;
  summary.per_layer.assign(l, 0.0);
  for (int layer = 0; layer < l; ++layer) {
    const std::vector<int> ref = reference.induced_partition(layer);
    double total = 0;
    for (const MultilayerPartition& f : found) {
      total += nmi_joint(ref, f.induced_partition(layer));
    }
    summary.per_layer[layer] = total / static_cast<double>(found.size());
    summary.mean += summary.per_layer[layer];
  }
  summary.mean /= static_cast<double>(l);
  return summary;
}

LayerNmiSummary per_layer_mean_nmi(const MultilayerPartition& reference,
                                   const MultilayerPartition& found) {
  return per_layer_mean_nmi(reference, std::span(&found, 1));
}

std::vector<std::vector<double>> pairwise_layer_nmi(
    const MultilayerPartition& partition) {
  const int l = partition.shape().layer_count();
  std::vector<std::vector<int>> induced(l);
  for (int layer = 0; layer < l; ++layer) {
    induced[layer] = partition.induced_partition(layer);
  }
  std::vector<std::vector<double>> matrix(l, std::vector<double>(l, 1.0));
  for (int a = 0; a < l; ++a) {
    for (int b = a + 1; b < l; ++b) {
      matrix[a][b] = matrix[b][a] = nmi_joint(induced[a], induced[b]);
    }
  }
  return matrix;
}

}  // namespace multinet
