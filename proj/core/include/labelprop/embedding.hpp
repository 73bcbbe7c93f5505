#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "labelprop/graph.hpp"

namespace labelprop {

// Pretrained token -> vector table. File format: `token<TAB>v1,v2,...,vdim`
// with comma-separated floats; the dimension is fixed by the first line.
struct EmbeddingTable {
  std::size_t dim = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;

  const std::vector<double>* find(const std::string& token) const;
};

EmbeddingTable load_embeddings(const std::string& path);
EmbeddingTable load_embeddings(std::istream& in, const std::string& display_name);

// Embedding of a node's text: whole-string lookup first (also trying the
// underscore-joined form of multi-word strings), else the mean of the
// vectors of the space-separated tokens found in the table. Returns nullopt
// when no token is known.
std::optional<std::vector<double>> compose_node_embedding(const std::string& node_text,
                                                          const EmbeddingTable& table);

// Per-node composed embeddings (node text = external id). Nodes without an
// embedding are logged to `log` when given and left empty.
std::vector<std::optional<std::vector<double>>> compose_all(const Graph& graph,
                                                            const EmbeddingTable& table,
                                                            std::ostream* log = nullptr);

}  // namespace labelprop
