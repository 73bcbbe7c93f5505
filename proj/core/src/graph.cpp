#include "labelprop/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace labelprop {

namespace {

std::uint64_t pair_key(NodeIndex u, NodeIndex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

bool edge_less(const Edge& a, const Edge& b) { return a.to < b.to; }

}  // namespace

std::optional<NodeIndex> Graph::find_node(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Graph::edge_weight(NodeIndex u, NodeIndex v) const {
  const auto& adj = adjacency_[u];
  auto it = std::lower_bound(adj.begin(), adj.end(), Edge{v, 0.0}, edge_less);
  if (it != adj.end() && it->to == v) return it->weight;
  return 0.0;
}

Graph Graph::merge_edges_max(std::span<const WeightedPair> extra) const {
  Graph out = *this;
  for (const auto& e : extra) {
    if (e.u == e.v) throw std::invalid_argument("self-loop in merged edges");
    if (e.weight < 0) throw std::invalid_argument("negative weight in merged edges");
    if (e.weight == 0) continue;
    auto& fwd = out.adjacency_[e.u];
    auto it = std::lower_bound(fwd.begin(), fwd.end(), Edge{e.v, 0.0}, edge_less);
    if (it != fwd.end() && it->to == e.v) {
      const double w = std::max(it->weight, e.weight);
      it->weight = w;
      auto& rev = out.adjacency_[e.v];
      auto rit = std::lower_bound(rev.begin(), rev.end(), Edge{e.u, 0.0}, edge_less);
      rit->weight = w;
    } else {
      fwd.insert(it, Edge{e.v, e.weight});
      auto& rev = out.adjacency_[e.v];
      auto rit = std::lower_bound(rev.begin(), rev.end(), Edge{e.u, 0.0}, edge_less);
      rev.insert(rit, Edge{e.u, e.weight});
      ++out.edge_count_;
    }
  }
  out.recompute_weighted_degrees();
  return out;
}

void Graph::recompute_weighted_degrees() {
  weighted_degree_.assign(adjacency_.size(), 0.0);
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    double sum = 0.0;
    for (const Edge& e : adjacency_[v]) sum += e.weight;
    weighted_degree_[v] = sum;
  }
}

void Graph::check_invariants() const {
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    const auto& adj = adjacency_[v];
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (adj[i].to == v) throw std::logic_error("self-loop at node " + ids_[v]);
      if (adj[i].weight < 0) throw std::logic_error("negative edge weight at node " + ids_[v]);
      if (adj[i].weight == 0) throw std::logic_error("zero-weight edge stored at node " + ids_[v]);
      if (i > 0 && adj[i - 1].to >= adj[i].to)
        throw std::logic_error("adjacency not strictly sorted at node " + ids_[v]);
      // symmetric entry with the same weight
      const auto& rev = adjacency_[adj[i].to];
      auto it = std::lower_bound(rev.begin(), rev.end(), Edge{static_cast<NodeIndex>(v), 0.0},
                                 edge_less);
      if (it == rev.end() || it->to != v || it->weight != adj[i].weight)
        throw std::logic_error("asymmetric edge " + ids_[v] + " - " + ids_[adj[i].to]);
    }
  }
}

NodeIndex Graph::Builder::add_node(const std::string& id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  const auto idx = static_cast<NodeIndex>(ids_.size());
  ids_.push_back(id);
  index_.emplace(id, idx);
  return idx;
}

std::optional<NodeIndex> Graph::Builder::find_node(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Graph::Builder::add_edge(NodeIndex u, NodeIndex v, double weight) {
  if (u == v) throw std::invalid_argument("self-loop on node '" + ids_[u] + "'");
  if (weight < 0) throw std::invalid_argument("negative edge weight");
  pair_weights_[pair_key(u, v)] += weight;
}

Graph Graph::Builder::build() && {
  Graph g;
  g.ids_ = std::move(ids_);
  g.index_ = std::move(index_);
  g.adjacency_.resize(g.ids_.size());
  for (const auto& [key, weight] : pair_weights_) {
    if (weight == 0) continue;  // zero-weight pairs are absent by definition
    const auto u = static_cast<NodeIndex>(key >> 32);
    const auto v = static_cast<NodeIndex>(key & 0xffffffffu);
    g.adjacency_[u].push_back(Edge{v, weight});
    g.adjacency_[v].push_back(Edge{u, weight});
    ++g.edge_count_;
  }
  for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end(), edge_less);
  g.recompute_weighted_degrees();
  return g;
}

}  // namespace labelprop
