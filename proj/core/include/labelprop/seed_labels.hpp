#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/types.hpp"

namespace labelprop {

// Seed (gold) label assignments: a dense label index space plus, per seed
// node, a normalized label distribution. A node is a seed iff it has at
// least one entry; unlabeled nodes have none.
class SeedLabels {
 public:
  class Builder;

  SeedLabels() = default;

  // Builds from pre-indexed entries; weights are normalized per node and
  // entries sorted by label index. Unused labels are allowed (they still
  // count toward m).
  SeedLabels(std::vector<std::string> label_ids,
             std::vector<std::vector<LabelWeight>> entries_by_node);

  std::size_t node_count() const { return entries_.size(); }
  std::size_t label_count() const { return label_ids_.size(); }  // m
  std::size_t seed_count() const { return seed_count_; }

  bool is_seed(NodeIndex v) const { return !entries_[v].empty(); }
  // Sorted by label index; empty for unlabeled nodes.
  std::span<const LabelWeight> entries(NodeIndex v) const { return entries_[v]; }

  const std::string& label_id(LabelIndex l) const { return label_ids_[l]; }
  std::optional<LabelIndex> find_label(const std::string& id) const;

  // Same label vocabulary, seed entries kept only for `nodes`.
  SeedLabels restricted_to(std::span<const NodeIndex> nodes) const;

 private:
  std::vector<std::vector<LabelWeight>> entries_;
  std::vector<std::string> label_ids_;
  std::unordered_map<std::string, LabelIndex> label_index_;
  std::size_t seed_count_ = 0;

  void normalize_and_index();
};

// String-keyed accumulator used by file ingestion. The label vocabulary is
// fixed by sorting the distinct label ids lexicographically.
class SeedLabels::Builder {
 public:
  explicit Builder(std::size_t node_count) : node_count_(node_count) {}

  // Requires weight > 0; duplicate (node, label) submissions sum.
  void add(NodeIndex node, const std::string& label, double weight);

  SeedLabels build() &&;

 private:
  std::size_t node_count_;
  std::vector<std::tuple<NodeIndex, std::string, double>> raw_;
};

}  // namespace labelprop
