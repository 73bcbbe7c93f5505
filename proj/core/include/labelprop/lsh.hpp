#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "labelprop/embedding.hpp"
#include "labelprop/graph.hpp"

namespace labelprop {

// Random-hyperplane LSH over L2-normalized embeddings plus the graph
// augmentation built on it: candidate pairs share a full signature in at
// least one table, survivors are rescored exactly with cosine similarity.

struct LshParams {
  double theta_sim = 0.6;   // cosine threshold for new edges
  std::size_t tables = 12;  // D
  std::size_t width = 10;   // W signature bits per table (<= 64)
  std::uint64_t rng_seed = 42;
};

class LshIndex {
 public:
  // D*W random unit hyperplanes of dimension `dim`, seeded. Tables are
  // generated sequentially, so a smaller D yields a prefix of a larger one.
  LshIndex(std::size_t dim, std::size_t tables, std::size_t width, std::uint64_t seed);

  // Bit j of table i's signature is (hyperplane_{i,j} . x >= 0).
  std::uint64_t signature(std::span<const double> vec, std::size_t table) const;

  void insert(NodeIndex node, std::span<const double> vec);

  // Distinct pairs sharing a bucket in >= 1 table, sorted; u < v.
  std::vector<std::pair<NodeIndex, NodeIndex>> candidate_pairs() const;

 private:
  std::size_t dim_;
  std::size_t tables_;
  std::size_t width_;
  std::vector<double> hyperplanes_;  // [table][bit][dim] flattened
  std::vector<std::unordered_map<std::uint64_t, std::vector<NodeIndex>>> buckets_;
};

struct AugmentStats {
  std::size_t nodes_embedded = 0;
  std::size_t nodes_skipped = 0;
  std::size_t candidate_pairs = 0;
  std::size_t edges_added = 0;
  std::size_t edges_raised = 0;  // existing edges whose weight increased
};

// Adds an edge (weight = cosine) for every candidate pair scoring at least
// theta_sim; existing edges keep the max of old weight and cosine. Original
// edges are always preserved.
Graph augment(const Graph& graph, const EmbeddingTable& table, const LshParams& params,
              AugmentStats* stats = nullptr, std::ostream* log = nullptr);

// Exact O(n^2) similarity scan: all pairs with cosine >= theta_sim, sorted;
// the small-scale recall oracle for `augment`. Throws when the number of
// embedded nodes exceeds `cap`.
std::vector<std::pair<NodeIndex, NodeIndex>> brute_force_pairs(
    const std::vector<std::optional<std::vector<double>>>& embeddings, double theta_sim,
    std::size_t cap = 10000);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

}  // namespace labelprop
