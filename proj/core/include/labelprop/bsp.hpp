#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/label_dist.hpp"
#include "labelprop/seed_labels.hpp"
#include "labelprop/types.hpp"

namespace labelprop {

// In-process bulk-synchronous engine: vertices are hash-partitioned
// (node index mod p), each superstep sends every node's previous label
// distribution to all neighbors, a barrier seals the message buffers, then
// every node consumes its inbox through the selected update kernel. Inboxes
// are sorted by source index before consumption so the output is identical
// for every partition count and worker count.

struct BspOptions {
  std::size_t partitions = 1;
  unsigned workers = 1;
  // When set, one line per superstep: "superstep=<i> msgs=<n> secs=<t>".
  std::ostream* log = nullptr;
};

PropagationRun run_bsp(const Graph& graph, const SeedLabels& seeds, const Hyperparams& params,
                       const BspOptions& options);

struct PartitionSummary {
  std::vector<std::size_t> node_counts;        // per partition
  std::vector<std::size_t> cross_edge_counts;  // edges leaving each partition
  std::size_t cut_edges = 0;                   // each cross edge counted once
};

PartitionSummary partition_stats(const Graph& graph, std::size_t partitions);

}  // namespace labelprop
