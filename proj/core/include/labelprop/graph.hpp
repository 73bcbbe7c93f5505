#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "labelprop/types.hpp"

namespace labelprop {

struct Edge {
  NodeIndex to = 0;
  double weight = 0.0;
};

struct WeightedPair {
  NodeIndex u = 0;
  NodeIndex v = 0;
  double weight = 0.0;
};

// Undirected weighted graph over dense node indices with a bijection to
// external string ids. Adjacency is stored symmetrically, without self loops
// or duplicates, sorted by neighbor index; streaming aggregation consumes
// neighbors in exactly that order, so the sort is load-bearing.
class Graph {
 public:
  class Builder;

  Graph() = default;

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Edge> neighbors(NodeIndex v) const { return adjacency_[v]; }
  std::size_t degree(NodeIndex v) const { return adjacency_[v].size(); }
  double weighted_degree(NodeIndex v) const { return weighted_degree_[v]; }

  const std::string& node_id(NodeIndex v) const { return ids_[v]; }
  std::optional<NodeIndex> find_node(const std::string& id) const;

  // 0.0 when the pair is not adjacent.
  double edge_weight(NodeIndex u, NodeIndex v) const;

  // Copy of this graph with `extra` edges merged in; an existing edge keeps
  // the max of old and new weight, a new edge is inserted symmetrically.
  Graph merge_edges_max(std::span<const WeightedPair> extra) const;

  // Exhaustive scan of the symmetry / no-self-loop / sortedness invariants.
  // Throws std::logic_error on the first violation; used by tests.
  void check_invariants() const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<double> weighted_degree_;
  std::size_t edge_count_ = 0;

  void recompute_weighted_degrees();
};

// Accumulating builder: duplicate (u, v) submissions sum their weights, in
// either orientation. Pairs whose accumulated weight is zero are dropped.
class Graph::Builder {
 public:
  NodeIndex add_node(const std::string& id);
  std::optional<NodeIndex> find_node(const std::string& id) const;
  std::size_t node_count() const { return ids_.size(); }

  // Requires u != v and weight >= 0.
  void add_edge(NodeIndex u, NodeIndex v, double weight);

  Graph build() &&;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::unordered_map<std::uint64_t, double> pair_weights_;
};

}  // namespace labelprop
