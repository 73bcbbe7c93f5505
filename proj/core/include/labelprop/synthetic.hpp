#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/seed_labels.hpp"

namespace labelprop {

// Planted-partition generator: c clusters of q nodes, independent edges with
// probability `intra` inside a cluster and `inter` across clusters, weight
// 1.0. The gold label of a node is its cluster. Pair sampling uses geometric
// skipping, so generation is O(nodes + edges) even for tiny probabilities.
struct SyntheticSpec {
  std::size_t clusters = 2;
  std::size_t nodes_per_cluster = 50;
  double intra = 0.3;
  double inter = 0.01;
  std::uint64_t rng_seed = 42;
};

struct SyntheticData {
  Graph graph;
  std::vector<LabelIndex> gold;  // cluster of each node
  std::vector<std::string> label_names;
};

SyntheticData generate_planted_partition(const SyntheticSpec& spec);

// Every node seeded with its cluster label (weight 1); the gold standard.
SeedLabels synthetic_gold(const SyntheticData& data);

// `per_cluster` nodes sampled uniformly from each cluster, seeded RNG.
std::vector<NodeIndex> sample_cluster_seeds(const SyntheticData& data, std::size_t per_cluster,
                                            std::uint64_t rng_seed);

}  // namespace labelprop
