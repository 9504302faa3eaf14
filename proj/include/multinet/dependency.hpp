#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multinet/core.hpp"

namespace multinet {

class InterlayerDependencyTensor;

// Layer-coupled copying weights: entry(a, b) is the probability that a state
// node in layer b copies its community assignment from the same physical node
// in layer a during one update.  The diagonal is zero and each layer's total
// incoming mass is at most 1; the remainder 1 - mass(b) is the probability of
// a draw from layer b's null distribution.  Aspect structure is carried so
// the tensor can be checked against a shape and expanded to state-node level.
class LayerDependencyTensor {
 public:
  LayerDependencyTensor(std::vector<AspectSpec> aspects,
                        std::vector<double> entries);

  const std::vector<AspectSpec>& aspects() const { return aspects_; }
  int layer_count() const { return layer_count_; }

  double entry(int source, int target) const {
    return entries_[static_cast<std::size_t>(source) * layer_count_ + target];
  }
  double incoming_mass(int target) const;

  // (source layer, weight) pairs with nonzero weight for one target layer,
  // in ascending source order.
  const std::vector<std::pair<int, double>>& incoming(int target) const {
    return incoming_[target];
  }

  InterlayerDependencyTensor expand(int node_count) const;

 private:
  std::vector<AspectSpec> aspects_;
  int layer_count_;
  std::vector<double> entries_;  // row-major, [source * l + target]
  std::vector<std::vector<std::pair<int, double>>> incoming_;
};

// State-node-level copying weights: for each target state node, a list of
// (source state node, weight) pairs.  Sources in other layers only; incoming
// mass per target at most 1.  This is the fully general form; the
// layer-coupled tensor corresponds to the special case where every node uses
// the same weights and copies only from its own counterparts.
class InterlayerDependencyTensor {
 public:
  struct Entry {
    int source_supra = 0;
    int target_supra = 0;
    double weight = 0;
  };

  InterlayerDependencyTensor(MultilayerShape shape,
                             const std::vector<Entry>& entries);

  const MultilayerShape& shape() const { return shape_; }

  const std::vector<std::pair<int, double>>& incoming(int target_supra) const {
    return incoming_[target_supra];
  }
  double incoming_mass(int target_supra) const;

 private:
  MultilayerShape shape_;
  // incoming_[t] = (source supra, weight), insertion order preserved
  std::vector<std::vector<std::pair<int, double>>> incoming_;
};

// --- Builders ------------------------------------------------------------
//
// All builders return tensors whose columns sum to at most 1 and which
// respect the ordering of every ordered aspect (no copying from a strictly
// later coordinate).

// Chain dependence along a single ordered aspect of size l: layer b copies
// from layer b-1 with probability p[b-1] (p has length l-1).
LayerDependencyTensor build_temporal(int l, std::span<const double> p);
LayerDependencyTensor build_temporal(int l, double p);

// Single unordered aspect of size l: every layer copies from each other layer
// with probability p_hat / (l - 1), so the total copy mass is p_hat.
LayerDependencyTensor build_uniform_multiplex(int l, double p_hat);

// Two aspects, an unordered one of size l1 (first) and an ordered one of size
// l2 (second).  Layer (b1, b2) copies from each same-time layer (a1, b2) with
// a1 != b1 and from its own predecessor (b1, b2 - 1), each with probability
// p[b1][b2]; the table is indexed by the target layer.
LayerDependencyTensor build_temporal_multiplex(
    int l1, int l2, const std::vector<std::vector<double>>& p);
LayerDependencyTensor build_temporal_multiplex(int l1, int l2, double p);

// Single unordered aspect partitioned into blocks: uniform copying with total
// mass p_hat[b] inside block b, none across blocks.  block_of[a] names the
// block of layer a (0-based block ids, contiguous).
LayerDependencyTensor build_block_multiplex(int l,
                                            std::span<const int> block_of,
                                            std::span<const double> p_hat);

// --- Validation ----------------------------------------------------------

struct DependencyValidationReport {
  // (target layer, mass) for layers whose incoming mass exceeds 1
  std::vector<std::pair<int, double>> mass_violations;
  // layers with a nonzero self-entry
  std::vector<int> diagonal_violations;
  // (source, target, aspect) triples where copying flows from a strictly
  // later coordinate of an ordered aspect
  struct CausalViolation {
    int source = 0;
    int target = 0;
    int aspect = 0;
  };
  std::vector<CausalViolation> causal_violations;

  bool passes() const {
    return mass_violations.empty() && diagonal_violations.empty() &&
           causal_violations.empty();
  }
  std::string summary() const;  // one line per violation, 1-based indices
};

// Validates a raw l-by-l matrix (row = source, column = target) against the
// aspect structure.  Matrices are never repaired; callers construct a tensor
// only after a clean report.
DependencyValidationReport validate_dependency_matrix(
    const std::vector<std::vector<double>>& matrix,
    const std::vector<AspectSpec>& aspects);

DependencyValidationReport validate_dependency(
    const LayerDependencyTensor& tensor);

}  // namespace multinet
