#include "labelprop/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace labelprop {

namespace {

std::string padded(const char* prefix, std::size_t value, std::size_t total) {
  std::size_t width = 1;
  for (std::size_t x = total > 0 ? total - 1 : 0; x >= 10; x /= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, static_cast<int>(width), value);
  return buf;
}

// Geometric skipping over a flattened pair space: visits each index
// independently with probability p in O(hits) draws.
template <typename Fn>
void sample_pairs(std::uint64_t total, double p, std::mt19937_64& rng, Fn&& emit) {
  if (total == 0 || p <= 0) return;
  if (p >= 1) {
    for (std::uint64_t r = 0; r < total; ++r) emit(r);
    return;
  }
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double log1mp = std::log1p(-p);
  std::uint64_t r = 0;
  while (true) {
    double u = uniform(rng);
    if (u >= 1.0) u = std::nextafter(1.0, 0.0);
    const double skip = std::floor(std::log1p(-u) / log1mp);
    if (skip >= static_cast<double>(total)) return;  // jumped past the end
    r += static_cast<std::uint64_t>(skip);
    if (r >= total) return;
    emit(r);
    ++r;
  }
}

// Unranks r in [0, q*(q-1)/2) to the pair (i, j), i < j < q. Closed-form
// guess for the row, then a correction walk for floating point rounding.
std::pair<std::uint64_t, std::uint64_t> unrank_triangular(std::uint64_t r, std::uint64_t q) {
  auto start = [q](std::uint64_t row) { return row * q - row * (row + 1) / 2; };
  const double qd = static_cast<double>(q);
  const double disc = std::max((2 * qd - 1) * (2 * qd - 1) - 8 * static_cast<double>(r), 0.0);
  const double guess = std::floor((2 * qd - 1 - std::sqrt(disc)) / 2);
  std::uint64_t i = guess <= 0 ? 0 : static_cast<std::uint64_t>(guess);
  if (i > q - 2) i = q - 2;
  while (i > 0 && start(i) > r) --i;
  while (i + 1 < q - 1 && start(i + 1) <= r) ++i;
  const std::uint64_t j = i + 1 + (r - start(i));
  return {i, j};
}

}  // namespace

SyntheticData generate_planted_partition(const SyntheticSpec& spec) {
  if (spec.clusters < 1 || spec.nodes_per_cluster < 1)
    throw std::invalid_argument("clusters and nodes-per-cluster must be >= 1");
  if (spec.intra < 0 || spec.intra > 1 || spec.inter < 0 || spec.inter > 1)
    throw std::invalid_argument("edge probabilities must be in [0, 1]");
  const std::uint64_t c = spec.clusters;
  const std::uint64_t q = spec.nodes_per_cluster;
  const std::uint64_t n = c * q;

  SyntheticData data;
  Graph::Builder builder;
  data.gold.reserve(n);
  for (std::uint64_t v = 0; v < n; ++v) {
    builder.add_node(padded("n", v, n));
    data.gold.push_back(static_cast<LabelIndex>(v / q));
  }
  data.label_names.reserve(c);
  for (std::uint64_t l = 0; l < c; ++l) data.label_names.push_back(padded("C", l, c));

  std::mt19937_64 rng(spec.rng_seed);

  // Intra-cluster pairs: c blocks of q*(q-1)/2 pairs each.
  const std::uint64_t per_block = q * (q - 1) / 2;
  sample_pairs(c * per_block, spec.intra, rng, [&](std::uint64_t r) {
    const std::uint64_t block = r / per_block;
    const auto [i, j] = unrank_triangular(r % per_block, q);
    builder.add_edge(static_cast<NodeIndex>(block * q + i), static_cast<NodeIndex>(block * q + j),
                     1.0);
  });

  // Inter-cluster pairs: one q*q block per ordered cluster pair (ci < cj).
  if (c > 1) {
    const std::uint64_t block_pairs = c * (c - 1) / 2;
    sample_pairs(block_pairs * q * q, spec.inter, rng, [&](std::uint64_t r) {
      const std::uint64_t block = r / (q * q);
      const std::uint64_t within = r % (q * q);
      const auto [ci, cj] = unrank_triangular(block, c);
      builder.add_edge(static_cast<NodeIndex>(ci * q + within / q),
                       static_cast<NodeIndex>(cj * q + within % q), 1.0);
    });
  }

  data.graph = std::move(builder).build();
  return data;
}

SeedLabels synthetic_gold(const SyntheticData& data) {
  std::vector<std::vector<LabelWeight>> entries(data.gold.size());
  for (std::size_t v = 0; v < data.gold.size(); ++v)
    entries[v].push_back(LabelWeight{data.gold[v], 1.0});
  return SeedLabels(data.label_names, std::move(entries));
}

std::vector<NodeIndex> sample_cluster_seeds(const SyntheticData& data, std::size_t per_cluster,
                                            std::uint64_t rng_seed) {
  const std::size_t c = data.label_names.size();
  const std::size_t q = data.gold.size() / (c == 0 ? 1 : c);
  std::mt19937_64 rng(rng_seed);
  std::vector<NodeIndex> seeds;
  for (std::size_t cluster = 0; cluster < c; ++cluster) {
    std::vector<NodeIndex> pool(q);
    for (std::size_t i = 0; i < q; ++i) pool[i] = static_cast<NodeIndex>(cluster * q + i);
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t take = std::min(per_cluster, pool.size());
    seeds.insert(seeds.end(), pool.begin(), pool.begin() + take);
  }
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

}  // namespace labelprop
