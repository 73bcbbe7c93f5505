#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "labelprop/graph.hpp"
#include "labelprop/label_dist.hpp"
#include "labelprop/seed_labels.hpp"

namespace labelprop {

// Edge list TSV: `src<TAB>dst<TAB>weight`, weight optional (default 1.0).
// Any whitespace separates fields; `#`-prefixed and blank lines are skipped.
// Duplicate pairs (either orientation) sum their weights. Self loops,
// negative weights and malformed lines are reported with their line number.
Graph load_graph(const std::string& path);
Graph load_graph(std::istream& in, const std::string& display_name);

// Seed TSV: `node<TAB>label<TAB>weight`, weight optional (default 1.0, must
// be positive). Nodes must exist in `graph`. Per-node weights are normalized
// to sum 1; label indices are fixed by sorting the distinct label ids.
SeedLabels load_seeds(const std::string& path, const Graph& graph);
SeedLabels load_seeds(std::istream& in, const std::string& display_name, const Graph& graph);

// Output TSV: `node<TAB>label<TAB>score`, nodes in external-id order, labels
// per node by score descending then label id ascending, scores with six
// decimal places. Nodes with an empty distribution are omitted.
void write_output(std::ostream& out, const Graph& graph, const SeedLabels& labels,
                  std::span<const SparseLabelDist> dists);
void write_output(const std::string& path, const Graph& graph, const SeedLabels& labels,
                  std::span<const SparseLabelDist> dists);

// Edge list TSV of `graph`, one line per undirected edge.
void write_graph(std::ostream& out, const Graph& graph);
void write_graph(const std::string& path, const Graph& graph);

}  // namespace labelprop
