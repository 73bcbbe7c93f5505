#pragma once

#include <span>
#include <vector>

#include "labelprop/types.hpp"

namespace labelprop {

// Bounded label distribution: at most k stored (label, weight) entries,
// sorted by weight descending then label ascending. Every unstored label
// implicitly carries `residual`, the average mass of the labels the node
// does not store: (1 - sum of stored weights) / (m - |entries|), clamped at
// zero. A distribution with no entries and residual 1/m is exactly uniform.
struct SparseLabelDist {
  std::vector<LabelWeight> entries;
  double residual = 0.0;

  // Stored weight for l, or the residual when l is not stored.
  double value(LabelIndex l) const;
  double stored_sum() const;
};

// Sorts `entries` into the canonical order and computes the residual for a
// label space of size `label_count`.
SparseLabelDist make_sparse(std::vector<LabelWeight> entries, std::size_t label_count);

// Canonical entry order: weight descending, label index ascending on ties.
void sort_entries(std::vector<LabelWeight>& entries);

// Expansion to a dense length-m vector (unstored labels get the residual).
std::vector<double> to_dense(const SparseLabelDist& dist, std::size_t label_count);

// Ranks a dense row and keeps the top k entries (canonical order).
SparseLabelDist top_k_of_dense(std::span<const double> row, std::size_t k);

// Label-store statistics for one propagation run.
struct IterationStats {
  std::size_t superstep = 0;
  std::size_t messages = 0;
  double secs = 0.0;
  std::size_t stored_entries = 0;    // total persisted entries after the step
  std::size_t max_node_entries = 0;  // largest per-node persisted store
};

struct PropagationRun {
  std::vector<SparseLabelDist> dists;
  std::vector<IterationStats> iterations;
  std::size_t peak_stored_entries = 0;
  std::size_t peak_node_entries = 0;
  double total_secs = 0.0;
};

// (total, max per node) persisted entry counts of a distribution set.
std::pair<std::size_t, std::size_t> count_entries(std::span<const SparseLabelDist> dists);

}  // namespace labelprop
