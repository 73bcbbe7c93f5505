#pragma once

// Shared test helpers: deterministic random instances and the independent
// oracles the algorithm implementations are checked against.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "labelprop/exact.hpp"
#include "labelprop/graph.hpp"
#include "labelprop/label_dist.hpp"
#include "labelprop/seed_labels.hpp"
#include "labelprop/streaming.hpp"

namespace testutil {

using namespace labelprop;

inline std::string zname(const char* prefix, std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%s%04zu", prefix, i);
  return buf;
}

struct Instance {
  Graph graph;
  SeedLabels seeds;
};

// Random weighted graph with m labels in the vocabulary; each node is a seed
// with probability seed_prob (one random label, occasionally two).
inline Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                double edge_prob = -1.0, double seed_prob = 0.25) {
  if (edge_prob < 0) edge_prob = std::min(1.0, 4.0 / static_cast<double>(n));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_int_distribution<LabelIndex> label(0, static_cast<LabelIndex>(m - 1));

  Graph::Builder gb;
  for (std::size_t i = 0; i < n; ++i) gb.add_node(zname("n", i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (u01(rng) < edge_prob)
        gb.add_edge(static_cast<NodeIndex>(i), static_cast<NodeIndex>(j), weight(rng));

  std::vector<std::vector<LabelWeight>> entries(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (u01(rng) >= seed_prob) continue;
    const LabelIndex l1 = label(rng);
    entries[v].push_back(LabelWeight{l1, 1.0});
    if (m > 1 && u01(rng) < 0.2) {
      const LabelIndex l2 = (l1 + 1 + label(rng) % (m - 1)) % static_cast<LabelIndex>(m);
      entries[v].push_back(LabelWeight{l2, weight(rng)});
    }
  }
  std::vector<std::string> names;
  for (std::size_t l = 0; l < m; ++l) names.push_back(zname("L", l));
  return {std::move(gb).build(), SeedLabels(std::move(names), std::move(entries))};
}

// Brute-force oracle for one node's aggregation stream: the exact dense
// aggregate of the literal messages, y_l = sum_t w_t * (stored value of l in
// msg_t, or its residual when absent). Independent of TupleList.
inline std::vector<double> stream_aggregate(const Graph& g, NodeIndex v,
                                            const std::vector<SparseLabelDist>& prev,
                                            std::size_t m,
                                            DeltaMode mode = DeltaMode::kAdaptive) {
  std::vector<double> y(m, 0.0);
  std::vector<char> in_msg(m, 0);
  for (const Edge& e : g.neighbors(v)) {
    const auto& msg = prev[e.to];
    const double d = mode == DeltaMode::kUniform ? 1.0 / static_cast<double>(m) : msg.residual;
    std::fill(in_msg.begin(), in_msg.end(), 0);
    for (const auto& ent : msg.entries) {
      y[ent.label] += e.weight * ent.weight;
      in_msg[ent.label] = 1;
    }
    for (std::size_t l = 0; l < m; ++l)
      if (!in_msg[l]) y[l] += e.weight * d;
  }
  return y;
}

inline double max_abs_diff(const ExactResult& exact, const std::vector<SparseLabelDist>& dists) {
  double worst = 0.0;
  const std::size_t m = exact.label_count;
  for (NodeIndex v = 0; v < dists.size(); ++v) {
    const auto dense = to_dense(dists[v], m);
    const auto row = exact.row(v);
    for (std::size_t l = 0; l < m; ++l) worst = std::max(worst, std::abs(dense[l] - row[l]));
  }
  return worst;
}

inline bool same_dists(const std::vector<SparseLabelDist>& a,
                       const std::vector<SparseLabelDist>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v].residual != b[v].residual) return false;
    if (a[v].entries.size() != b[v].entries.size()) return false;
    for (std::size_t i = 0; i < a[v].entries.size(); ++i) {
      if (a[v].entries[i].label != b[v].entries[i].label) return false;
      if (a[v].entries[i].weight != b[v].entries[i].weight) return false;
    }
  }
  return true;
}

}  // namespace testutil
