#include "labelprop/embedding.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace labelprop {

namespace {

[[noreturn]] void parse_error(const std::string& name, std::size_t line, const std::string& msg) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

const std::vector<double>* EmbeddingTable::find(const std::string& token) const {
  auto it = vectors.find(token);
  return it == vectors.end() ? nullptr : &it->second;
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return load_embeddings(in, path);
}

EmbeddingTable load_embeddings(std::istream& in, const std::string& display_name) {
  EmbeddingTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      parse_error(display_name, lineno, "expected 'token<TAB>v1,v2,...'");
    const std::string token = line.substr(0, tab);
    std::vector<double> vec;
    std::stringstream values(line.substr(tab + 1));
    std::string field;
    while (std::getline(values, field, ',')) {
      std::size_t pos = 0;
      double x = 0.0;
      try {
        x = std::stod(field, &pos);
      } catch (const std::exception&) {
        parse_error(display_name, lineno, "malformed component '" + field + "'");
      }
      if (pos != field.size())
        parse_error(display_name, lineno, "malformed component '" + field + "'");
      vec.push_back(x);
    }
    if (vec.empty()) parse_error(display_name, lineno, "empty vector");
    if (table.dim == 0) {
      table.dim = vec.size();
    } else if (vec.size() != table.dim) {
      parse_error(display_name, lineno,
                  "dimension mismatch: expected " + std::to_string(table.dim) + ", got " +
                      std::to_string(vec.size()));
    }
    table.vectors[token] = std::move(vec);
  }
  return table;
}

std::optional<std::vector<double>> compose_node_embedding(const std::string& node_text,
                                                          const EmbeddingTable& table) {
  if (node_text.empty()) return std::nullopt;
  // Whole-string lookup first, including the underscore-joined phrase form.
  if (const auto* vec = table.find(node_text)) return *vec;
  if (node_text.find(' ') != std::string::npos) {
    std::string joined = node_text;
    for (char& c : joined)
      if (c == ' ') c = '_';
    if (const auto* vec = table.find(joined)) return *vec;
  }
  // Mean over the tokens that are in the table; absent tokens are skipped.
  std::vector<double> mean(table.dim, 0.0);
  std::size_t found = 0;
  std::istringstream tokens(node_text);
  std::string tok;
  while (std::getline(tokens, tok, ' ')) {
    if (tok.empty()) continue;
    if (const auto* vec = table.find(tok)) {
      for (std::size_t i = 0; i < table.dim; ++i) mean[i] += (*vec)[i];
      ++found;
    }
  }
  if (found == 0) return std::nullopt;
  for (double& x : mean) x /= static_cast<double>(found);
  return mean;
}

std::vector<std::optional<std::vector<double>>> compose_all(const Graph& graph,
                                                            const EmbeddingTable& table,
                                                            std::ostream* log) {
  std::vector<std::optional<std::vector<double>>> out(graph.node_count());
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    out[v] = compose_node_embedding(graph.node_id(v), table);
    if (!out[v] && log)
      *log << "warning: no embedding for node '" << graph.node_id(v) << "', excluded\n";
  }
  return out;
}

}  // namespace labelprop
