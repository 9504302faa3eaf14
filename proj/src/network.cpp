#include "multinet/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace multinet {

namespace {

// Canonical sort key: source layer, target layer, source node, target node.
std::tuple<int, int, int, int> edge_key(const MultilayerShape& shape,
                                        const MultilayerEdge& e) {
  return {shape.supra_layer(e.a), shape.supra_layer(e.b),
          shape.supra_node(e.a), shape.supra_node(e.b)};
}

}  // namespace

MultilayerNetwork::MultilayerNetwork(MultilayerShape shape, bool directed,
                                     std::vector<MultilayerEdge> edges)
    : shape_(std::move(shape)), directed_(directed), edges_(std::move(edges)) {
  const std::int64_t count = shape_.state_node_count();
  for (MultilayerEdge& e : edges_) {
    if (e.a < 0 || e.a >= count || e.b < 0 || e.b >= count) {
      throw std::out_of_range("network: edge endpoint out of range");
    }
    if (e.a == e.b) {
      throw std::invalid_argument("network: self-edges are not allowed");
    }
    if (!(e.weight > 0)) {
      throw std::invalid_argument("network: edge weights must be positive");
    }
    if (!directed_ && e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges_.begin(), edges_.end(),
            [this](const MultilayerEdge& x, const MultilayerEdge& y) {
              return edge_key(shape_, x) < edge_key(shape_, y);
            });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].a == edges_[i].a && edges_[i - 1].b == edges_[i].b) {
      throw std::invalid_argument("network: duplicate edge");
    }
  }
  adjacency_.resize(count);
  if (directed_) in_adjacency_.resize(count);
  for (const MultilayerEdge& e : edges_) {
    if (is_intralayer(e)) ++intralayer_count_;
    adjacency_[e.a].emplace_back(e.b, e.weight);
    if (directed_) {
      in_adjacency_[e.b].emplace_back(e.a, e.weight);
    } else {
      adjacency_[e.b].emplace_back(e.a, e.weight);
    }
  }
}

double MultilayerNetwork::out_degree(StateNode v, int neighbor_layer) const {
  const int supra = shape_.supra_index(v.node, v.layer);
  double total = 0;
  for (const auto& [other, w] : adjacency_[supra]) {
    if (shape_.supra_layer(other) == neighbor_layer) total += w;
  }
  return total;
}

double MultilayerNetwork::in_degree(StateNode v, int neighbor_layer) const {
  const int supra = shape_.supra_index(v.node, v.layer);
  const auto& list = directed_ ? in_adjacency_[supra] : adjacency_[supra];
  double total = 0;
  for (const auto& [other, w] : list) {
    if (shape_.supra_layer(other) == neighbor_layer) total += w;
  }
  return total;
}

}  // namespace multinet
