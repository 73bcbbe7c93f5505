#include "labelprop/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace labelprop {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::uint64_t pair_key(NodeIndex u, NodeIndex v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
  const double denom = norm(a) * norm(b);
  return denom > 0 ? dot(a, b) / denom : 0.0;
}

LshIndex::LshIndex(std::size_t dim, std::size_t tables, std::size_t width, std::uint64_t seed)
    : dim_(dim), tables_(tables), width_(width) {
  if (dim == 0) throw std::invalid_argument("embedding dimension must be > 0");
  if (tables == 0) throw std::invalid_argument("table count must be > 0");
  if (width == 0 || width > 64)
    throw std::invalid_argument("signature width must be in [1, 64]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  hyperplanes_.resize(tables * width * dim);
  // tables are generated in sequence, so table i is identical for any D > i
  for (std::size_t t = 0; t < tables; ++t) {
    for (std::size_t b = 0; b < width; ++b) {
      double* plane = hyperplanes_.data() + (t * width + b) * dim;
      double sq = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        plane[d] = gauss(rng);
        sq += plane[d] * plane[d];
      }
      const double inv = sq > 0 ? 1.0 / std::sqrt(sq) : 0.0;
      for (std::size_t d = 0; d < dim; ++d) plane[d] *= inv;  // unit hyperplane
    }
  }
  buckets_.resize(tables);
}

std::uint64_t LshIndex::signature(std::span<const double> vec, std::size_t table) const {
  if (vec.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  std::uint64_t sig = 0;
  for (std::size_t b = 0; b < width_; ++b) {
    const double* plane = hyperplanes_.data() + (table * width_ + b) * dim_;
    double d = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) d += plane[i] * vec[i];
    if (d >= 0) sig |= (1ULL << b);
  }
  return sig;
}

void LshIndex::insert(NodeIndex node, std::span<const double> vec) {
  for (std::size_t t = 0; t < tables_; ++t) buckets_[t][signature(vec, t)].push_back(node);
}

std::vector<std::pair<NodeIndex, NodeIndex>> LshIndex::candidate_pairs() const {
  std::unordered_set<std::uint64_t> seen;
  for (const auto& table : buckets_) {
    for (const auto& [sig, nodes] : table) {
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
          NodeIndex u = nodes[i];
          NodeIndex v = nodes[j];
          if (u > v) std::swap(u, v);
          seen.insert(pair_key(u, v));
        }
      }
    }
  }
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  pairs.reserve(seen.size());
  for (std::uint64_t key : seen)
    pairs.emplace_back(static_cast<NodeIndex>(key >> 32),
                       static_cast<NodeIndex>(key & 0xffffffffu));
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

Graph augment(const Graph& graph, const EmbeddingTable& table, const LshParams& params,
              AugmentStats* stats, std::ostream* log) {
  if (params.theta_sim <= 0 || params.theta_sim > 1)
    throw std::invalid_argument("theta-sim must be in (0, 1]");
  AugmentStats local;
  auto embeddings = compose_all(graph, table, log);

  // L2-normalize up front; hashing and scoring both run on unit vectors, so
  // the candidate score is plain cosine.
  std::vector<std::optional<std::vector<double>>> unit(embeddings.size());
  for (NodeIndex v = 0; v < embeddings.size(); ++v) {
    if (!embeddings[v]) {
      ++local.nodes_skipped;
      continue;
    }
    const double len = norm(*embeddings[v]);
    if (len <= 0) {
      ++local.nodes_skipped;
      if (log) *log << "warning: zero-norm embedding for node '" << graph.node_id(v)
                    << "', excluded\n";
      continue;
    }
    unit[v] = *embeddings[v];
    for (double& x : *unit[v]) x /= len;
    ++local.nodes_embedded;
  }

  LshIndex index(table.dim, params.tables, params.width, params.rng_seed);
  for (NodeIndex v = 0; v < unit.size(); ++v)
    if (unit[v]) index.insert(v, *unit[v]);

  std::vector<WeightedPair> accepted;
  const auto candidates = index.candidate_pairs();
  local.candidate_pairs = candidates.size();
  for (const auto& [u, v] : candidates) {
    const double sim = dot(*unit[u], *unit[v]);
    if (sim < params.theta_sim) continue;  // LSH false positive, filtered
    const double existing = graph.edge_weight(u, v);
    if (existing == 0.0) {
      ++local.edges_added;
    } else if (sim > existing) {
      ++local.edges_raised;
    }
    accepted.push_back(WeightedPair{u, v, sim});
  }
  if (stats) *stats = local;
  return graph.merge_edges_max(accepted);
}

std::vector<std::pair<NodeIndex, NodeIndex>> brute_force_pairs(
    const std::vector<std::optional<std::vector<double>>>& embeddings, double theta_sim,
    std::size_t cap) {
  std::size_t present = 0;
  for (const auto& e : embeddings)
    if (e) ++present;
  if (present > cap)
    throw std::invalid_argument("brute-force pair scan over " + std::to_string(present) +
                                " nodes exceeds the cap of " + std::to_string(cap));
  std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
  for (NodeIndex u = 0; u < embeddings.size(); ++u) {
    if (!embeddings[u]) continue;
    for (NodeIndex v = u + 1; v < embeddings.size(); ++v) {
      if (!embeddings[v]) continue;
      if (cosine_similarity(*embeddings[u], *embeddings[v]) >= theta_sim) pairs.emplace_back(u, v);
    }
  }
  return pairs;
}

}  // namespace labelprop
