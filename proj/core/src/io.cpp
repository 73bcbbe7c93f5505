#include "labelprop/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace labelprop {

namespace {

[[noreturn]] void parse_error(const std::string& name, std::size_t line, const std::string& msg) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

// Splits on runs of spaces/tabs; both separators are accepted.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) fields.push_back(tok);
  return fields;
}

bool skip_line(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;  // blank
}

double parse_weight(const std::string& name, std::size_t line, const std::string& tok) {
  std::size_t pos = 0;
  double w = 0.0;
  try {
    w = std::stod(tok, &pos);
  } catch (const std::exception&) {
    parse_error(name, line, "malformed weight '" + tok + "'");
  }
  if (pos != tok.size()) parse_error(name, line, "malformed weight '" + tok + "'");
  if (!(w == w)) parse_error(name, line, "malformed weight '" + tok + "'");
  return w;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::string trim_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void format_score(char* buf, std::size_t n, double score) { std::snprintf(buf, n, "%.6f", score); }

}  // namespace

Graph load_graph(const std::string& path) {
  auto in = open_input(path);
  return load_graph(in, path);
}

Graph load_graph(std::istream& in, const std::string& display_name) {
  Graph::Builder builder;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_cr(line);
    if (skip_line(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() < 2 || fields.size() > 3)
      parse_error(display_name, lineno, "expected 'src dst [weight]', got " +
                                            std::to_string(fields.size()) + " fields");
    if (fields[0] == fields[1])
      parse_error(display_name, lineno, "self-loop on node '" + fields[0] + "'");
    const double w = fields.size() == 3 ? parse_weight(display_name, lineno, fields[2]) : 1.0;
    if (w < 0) parse_error(display_name, lineno, "negative edge weight");
    const NodeIndex u = builder.add_node(fields[0]);
    const NodeIndex v = builder.add_node(fields[1]);
    builder.add_edge(u, v, w);
  }
  return std::move(builder).build();
}

SeedLabels load_seeds(const std::string& path, const Graph& graph) {
  auto in = open_input(path);
  return load_seeds(in, path, graph);
}

SeedLabels load_seeds(std::istream& in, const std::string& display_name, const Graph& graph) {
  SeedLabels::Builder builder(graph.node_count());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_cr(line);
    if (skip_line(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() < 2 || fields.size() > 3)
      parse_error(display_name, lineno, "expected 'node label [weight]', got " +
                                            std::to_string(fields.size()) + " fields");
    const auto node = graph.find_node(fields[0]);
    if (!node) parse_error(display_name, lineno, "unknown node '" + fields[0] + "'");
    const double w = fields.size() == 3 ? parse_weight(display_name, lineno, fields[2]) : 1.0;
    if (w <= 0) parse_error(display_name, lineno, "non-positive seed weight");
    builder.add(*node, fields[1], w);
  }
  return std::move(builder).build();
}

void write_output(std::ostream& out, const Graph& graph, const SeedLabels& labels,
                  std::span<const SparseLabelDist> dists) {
  std::vector<NodeIndex> order(graph.node_count());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
    return graph.node_id(a) < graph.node_id(b);
  });
  char buf[32];
  for (NodeIndex v : order) {
    for (const auto& e : dists[v].entries) {
      format_score(buf, sizeof buf, e.weight);
      out << graph.node_id(v) << '\t' << labels.label_id(e.label) << '\t' << buf << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failure on output stream");
}

void write_output(const std::string& path, const Graph& graph, const SeedLabels& labels,
                  std::span<const SparseLabelDist> dists) {
  auto out = open_output(path);
  write_output(out, graph, labels, dists);
}

void write_graph(std::ostream& out, const Graph& graph) {
  char buf[32];
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    for (const auto& e : graph.neighbors(v)) {
      if (e.to < v) continue;  // one line per undirected edge
      format_score(buf, sizeof buf, e.weight);
      out << graph.node_id(v) << '\t' << graph.node_id(e.to) << '\t' << buf << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failure on output stream");
}

void write_graph(const std::string& path, const Graph& graph) {
  auto out = open_output(path);
  write_graph(out, graph);
}

}  // namespace labelprop
