#pragma once

#include <cstdint>
#include <vector>

#include "multinet/core.hpp"

namespace multinet {

// One (possibly weighted) edge between two state nodes, stored by supra
// index.  For undirected networks, endpoints are canonicalized so that
// (layer, node) of `a` sorts before `b`.
struct MultilayerEdge {
  int a = 0;
  int b = 0;
  double weight = 1.0;
};

// An edge list over the state nodes of a fully interconnected multilayer
// shape.  No self-edges, no duplicate edges; edges are kept in a canonical
// order (source layer, target layer, source node, target node) so that equal
// networks have equal representations.  Immutable after construction.
class MultilayerNetwork {
 public:
  MultilayerNetwork(MultilayerShape shape, bool directed,
                    std::vector<MultilayerEdge> edges);

  const MultilayerShape& shape() const { return shape_; }
  bool directed() const { return directed_; }
  const std::vector<MultilayerEdge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  bool is_intralayer(const MultilayerEdge& e) const {
    return shape_.supra_layer(e.a) == shape_.supra_layer(e.b);
  }
  std::size_t intralayer_edge_count() const { return intralayer_count_; }
  std::size_t interlayer_edge_count() const {
    return edges_.size() - intralayer_count_;
  }

  // Weighted degree of a state node restricted to neighbors in one layer.
  // For directed networks, out_degree counts edges leaving the state node and
  // in_degree edges entering it; they coincide for undirected networks.
  double out_degree(StateNode v, int neighbor_layer) const;
  double in_degree(StateNode v, int neighbor_layer) const;

  // Neighbors of a supra node as (other endpoint, weight); for directed
  // networks these are the outgoing edges.
  const std::vector<std::pair<int, double>>& neighbors(int supra) const {
    return adjacency_[supra];
  }
  const std::vector<std::pair<int, double>>& in_neighbors(int supra) const {
    return directed_ ? in_adjacency_[supra] : adjacency_[supra];
  }

 private:
  MultilayerShape shape_;
  bool directed_;
  std::vector<MultilayerEdge> edges_;
  std::size_t intralayer_count_ = 0;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
  std::vector<std::vector<std::pair<int, double>>> in_adjacency_;  // directed
};

}  // namespace multinet
