#include "labelprop/label_dist.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace labelprop {

double SparseLabelDist::value(LabelIndex l) const {
  for (const auto& e : entries)
    if (e.label == l) return e.weight;
  return residual;
}

double SparseLabelDist::stored_sum() const {
  double sum = 0.0;
  for (const auto& e : entries) sum += e.weight;
  return sum;
}

void sort_entries(std::vector<LabelWeight>& entries) {
  std::sort(entries.begin(), entries.end(), [](const LabelWeight& a, const LabelWeight& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.label < b.label;
  });
}

SparseLabelDist make_sparse(std::vector<LabelWeight> entries, std::size_t label_count) {
  if (entries.size() > label_count)
    throw std::invalid_argument("more stored entries than labels");
  sort_entries(entries);
  SparseLabelDist dist;
  dist.entries = std::move(entries);
  const std::size_t unstored = label_count - dist.entries.size();
  if (unstored > 0) {
    const double rest = 1.0 - dist.stored_sum();
    dist.residual = rest > 0 ? rest / static_cast<double>(unstored) : 0.0;
  }
  return dist;
}

std::vector<double> to_dense(const SparseLabelDist& dist, std::size_t label_count) {
  std::vector<double> row(label_count, dist.residual);
  for (const auto& e : dist.entries) row[e.label] = e.weight;
  return row;
}

SparseLabelDist top_k_of_dense(std::span<const double> row, std::size_t k) {
  std::vector<LabelWeight> entries;
  entries.reserve(row.size());
  for (std::size_t l = 0; l < row.size(); ++l)
    entries.push_back(LabelWeight{static_cast<LabelIndex>(l), row[l]});
  sort_entries(entries);
  if (entries.size() > k) entries.resize(k);
  return make_sparse(std::move(entries), row.size());
}

std::pair<std::size_t, std::size_t> count_entries(std::span<const SparseLabelDist> dists) {
  std::size_t total = 0;
  std::size_t max_node = 0;
  for (const auto& d : dists) {
    total += d.entries.size();
    max_node = std::max(max_node, d.entries.size());
  }
  return {total, max_node};
}

}  // namespace labelprop
