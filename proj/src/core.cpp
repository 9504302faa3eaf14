#include "multinet/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace multinet {

MultilayerShape::MultilayerShape(int node_count, std::vector<AspectSpec> aspects)
    : n_(node_count), aspects_(std::move(aspects)) {
  if (n_ <= 0) throw std::invalid_argument("shape: node count must be positive");
  if (aspects_.empty()) {
    throw std::invalid_argument("shape: at least one aspect required");
  }
  long long l = 1;
  for (const AspectSpec& a : aspects_) {
    if (a.size <= 0) {
      throw std::invalid_argument("shape: aspect sizes must be positive");
    }
    l *= a.size;
    if (l > (1ll << 31)) {
      throw std::invalid_argument("shape: layer count overflows");
    }
  }
  layer_count_ = static_cast<int>(l);
}

int MultilayerShape::flatten_layer(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != aspect_count()) {
    throw std::invalid_argument("flatten_layer: wrong number of coordinates");
  }
  int flat = 0;
  int radix = 1;
  for (int a = 0; a < aspect_count(); ++a) {
    if (coords[a] < 0 || coords[a] >= aspects_[a].size) {
      throw std::out_of_range("flatten_layer: coordinate out of range");
    }
    flat += coords[a] * radix;
    radix *= aspects_[a].size;
  }
  return flat;
}

std::vector<int> MultilayerShape::unflatten_layer(int flat) const {
  if (flat < 0 || flat >= layer_count_) {
    throw std::out_of_range("unflatten_layer: flat index out of range");
  }
  std::vector<int> coords(aspect_count());
  for (int a = 0; a < aspect_count(); ++a) {
    coords[a] = flat % aspects_[a].size;
    flat /= aspects_[a].size;
  }
  return coords;
}

bool MultilayerShape::layer_precedes_or_equal(int flat_a, int flat_b) const {
  const std::vector<int> ca = unflatten_layer(flat_a);
  const std::vector<int> cb = unflatten_layer(flat_b);
  for (int a = 0; a < aspect_count(); ++a) {
    if (aspects_[a].ordering == AspectOrdering::ordered && ca[a] > cb[a]) {
      return false;
    }
  }
  return true;
}

std::vector<int> MultilayerShape::layer_update_order() const {
  // Key = coordinates of ordered aspects only.  Componentwise <= implies
  // lexicographic <=, so sorting by this key is a linear extension of the
  // partial order; the flat-index tiebreak makes it deterministic.
  std::vector<std::vector<int>> keys(layer_count_);
  for (int f = 0; f < layer_count_; ++f) {
    const std::vector<int> coords = unflatten_layer(f);
    for (int a = 0; a < aspect_count(); ++a) {
      if (aspects_[a].ordering == AspectOrdering::ordered) {
        keys[f].push_back(coords[a]);
      }
    }
  }
  std::vector<int> order(layer_count_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[a] < keys[b];
  });
  return order;
}

bool MultilayerShape::fully_ordered() const {
  return std::all_of(aspects_.begin(), aspects_.end(), [](const AspectSpec& a) {
    return a.ordering == AspectOrdering::ordered;
  });
}

bool MultilayerShape::aspect_sizes_equal(const MultilayerShape& other) const {
  if (aspects_.size() != other.aspects_.size()) return false;
  for (std::size_t i = 0; i < aspects_.size(); ++i) {
    if (aspects_[i].size != other.aspects_[i].size) return false;
  }
  return true;
}

bool MultilayerShape::orderings_equal(const MultilayerShape& other) const {
  for (std::size_t i = 0; i < aspects_.size(); ++i) {
    if (aspects_[i].ordering != other.aspects_[i].ordering) return false;
  }
  return true;
}

MultilayerPartition::MultilayerPartition(MultilayerShape shape,
                                         std::vector<int> labels)
    : shape_(std::move(shape)), labels_(std::move(labels)) {
  if (static_cast<std::int64_t>(labels_.size()) != shape_.state_node_count()) {
    throw std::invalid_argument(
        "partition: label vector size must equal the state-node count");
  }
  for (int v : labels_) {
    if (v < 0) {
      throw std::invalid_argument("partition: labels must be non-negative");
    }
  }
}

MultilayerPartition MultilayerPartition::constant(const MultilayerShape& shape,
                                                  int label) {
  return MultilayerPartition(
      shape, std::vector<int>(shape.state_node_count(), label));
}

std::vector<int> MultilayerPartition::induced_partition(int flat_layer) const {
  if (flat_layer < 0 || flat_layer >= shape_.layer_count()) {
    throw std::out_of_range("induced_partition: layer out of range");
  }
  const int n = shape_.node_count();
  const auto begin = labels_.begin() + static_cast<std::size_t>(flat_layer) * n;
  return std::vector<int>(begin, begin + n);
}

int MultilayerPartition::max_label() const {
  int m = 0;
  for (int v : labels_) m = std::max(m, v);
  return m;
}

int MultilayerPartition::community_count(int flat_layer) const {
  const std::vector<int> ind = induced_partition(flat_layer);
  return static_cast<int>(std::set<int>(ind.begin(), ind.end()).size());
}

}  // namespace multinet
