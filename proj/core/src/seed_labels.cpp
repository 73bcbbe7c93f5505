#include "labelprop/seed_labels.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace labelprop {

SeedLabels::SeedLabels(std::vector<std::string> label_ids,
                       std::vector<std::vector<LabelWeight>> entries_by_node)
    : entries_(std::move(entries_by_node)), label_ids_(std::move(label_ids)) {
  normalize_and_index();
}

void SeedLabels::normalize_and_index() {
  label_index_.clear();
  for (std::size_t l = 0; l < label_ids_.size(); ++l)
    label_index_.emplace(label_ids_[l], static_cast<LabelIndex>(l));
  seed_count_ = 0;
  for (auto& entries : entries_) {
    if (entries.empty()) continue;
    ++seed_count_;
    std::sort(entries.begin(), entries.end(),
              [](const LabelWeight& a, const LabelWeight& b) { return a.label < b.label; });
    double sum = 0.0;
    for (const auto& e : entries) {
      if (e.label >= label_ids_.size()) throw std::invalid_argument("seed label out of range");
      if (e.weight <= 0) throw std::invalid_argument("seed weights must be positive");
      sum += e.weight;
    }
    for (auto& e : entries) e.weight /= sum;
  }
}

std::optional<LabelIndex> SeedLabels::find_label(const std::string& id) const {
  auto it = label_index_.find(id);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

SeedLabels SeedLabels::restricted_to(std::span<const NodeIndex> nodes) const {
  std::vector<std::vector<LabelWeight>> kept(entries_.size());
  for (NodeIndex v : nodes) kept[v] = entries_[v];
  return SeedLabels(label_ids_, std::move(kept));
}

void SeedLabels::Builder::add(NodeIndex node, const std::string& label, double weight) {
  if (weight <= 0) throw std::invalid_argument("seed weight must be positive");
  if (node >= node_count_) throw std::invalid_argument("seed node index out of range");
  raw_.emplace_back(node, label, weight);
}

SeedLabels SeedLabels::Builder::build() && {
  // Vocabulary: distinct label ids in lexicographic order, for run-to-run
  // deterministic indices.
  std::set<std::string> distinct;
  for (const auto& [node, label, weight] : raw_) distinct.insert(label);
  std::vector<std::string> label_ids(distinct.begin(), distinct.end());
  std::unordered_map<std::string, LabelIndex> index;
  for (std::size_t l = 0; l < label_ids.size(); ++l)
    index.emplace(label_ids[l], static_cast<LabelIndex>(l));

  std::vector<std::map<LabelIndex, double>> acc(node_count_);
  for (const auto& [node, label, weight] : raw_) acc[node][index.at(label)] += weight;

  std::vector<std::vector<LabelWeight>> entries(node_count_);
  for (std::size_t v = 0; v < node_count_; ++v) {
    entries[v].reserve(acc[v].size());
    for (const auto& [l, w] : acc[v]) entries[v].push_back(LabelWeight{l, w});
  }
  return SeedLabels(std::move(label_ids), std::move(entries));
}

}  // namespace labelprop
