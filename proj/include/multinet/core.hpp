#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace multinet {

// Probability sums are validated against this slack to absorb floating-point
// accumulation error; anything further out is treated as a modeling error.
inline constexpr double kProbTolerance = 1e-12;

enum class AspectOrdering { ordered, unordered };

struct AspectSpec {
  int size = 1;
  AspectOrdering ordering = AspectOrdering::unordered;
};

// Shape of a fully interconnected multilayer network: n physical nodes and a
// list of aspects whose Cartesian product forms the layers.  A layer is
// addressed either by its per-aspect coordinates (0-based internally) or by a
// flat index in mixed-radix order with the first aspect varying fastest.
// State node (node i, flat layer a) maps to supra index a * n + i, so a
// layer's state nodes are contiguous in supra order.
class MultilayerShape {
 public:
  MultilayerShape(int node_count, std::vector<AspectSpec> aspects);

  int node_count() const { return n_; }
  int aspect_count() const { return static_cast<int>(aspects_.size()); }
  const std::vector<AspectSpec>& aspects() const { return aspects_; }
  int layer_count() const { return layer_count_; }
  std::int64_t state_node_count() const {
    return static_cast<std::int64_t>(n_) * layer_count_;
  }

  int flatten_layer(std::span<const int> coords) const;
  std::vector<int> unflatten_layer(int flat) const;

  int supra_index(int node, int flat_layer) const {
    return flat_layer * n_ + node;
  }
  int supra_node(int supra) const { return supra % n_; }
  int supra_layer(int supra) const { return supra / n_; }

  // Partial order over layers: a precedes-or-equals b iff a's coordinate is
  // <= b's in every ordered aspect.  Unordered aspects impose no constraint.
  bool layer_precedes_or_equal(int flat_a, int flat_b) const;

  // A deterministic linear extension of the partial order: layers sorted by
  // their ordered-aspect coordinates, ties broken by flat index.
  std::vector<int> layer_update_order() const;

  bool fully_ordered() const;  // every aspect ordered

  bool operator==(const MultilayerShape& other) const {
    return n_ == other.n_ && aspect_sizes_equal(other) &&
           orderings_equal(other);
  }
  bool operator!=(const MultilayerShape& other) const {
    return !(*this == other);
  }

 private:
  bool aspect_sizes_equal(const MultilayerShape& other) const;
  bool orderings_equal(const MultilayerShape& other) const;

  int n_;
  std::vector<AspectSpec> aspects_;
  int layer_count_;
};

struct StateNode {
  int node = 0;
  int layer = 0;  // flat layer index

  bool operator==(const StateNode& other) const {
    return node == other.node && layer == other.layer;
  }
};

// A community assignment for every state node.  Labels are small non-negative
// integers (0-based internally; file I/O shifts to 1-based).  Immutable after
// construction: samplers build a label vector and hand it over.
class MultilayerPartition {
 public:
  MultilayerPartition(MultilayerShape shape, std::vector<int> labels);

  static MultilayerPartition constant(const MultilayerShape& shape, int label);

  const MultilayerShape& shape() const { return shape_; }
  const std::vector<int>& labels() const { return labels_; }

  int label(int node, int flat_layer) const {
    return labels_[static_cast<std::size_t>(flat_layer) * shape_.node_count() +
                   node];
  }
  int label_at(int supra) const { return labels_[supra]; }

  // The partition of the n physical nodes induced by one layer.
  std::vector<int> induced_partition(int flat_layer) const;

  int max_label() const;
  int community_count(int flat_layer) const;  // distinct labels in a layer

  bool operator==(const MultilayerPartition& other) const {
    return shape_ == other.shape_ && labels_ == other.labels_;
  }

 private:
  MultilayerShape shape_;
  std::vector<int> labels_;  // supra-indexed: labels_[layer * n + node]
};

}  // namespace multinet
