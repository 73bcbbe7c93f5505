#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/seed_labels.hpp"
#include "labelprop/types.hpp"

namespace labelprop {

// Evaluation protocol: sample seeds per label, propagate, score the held-out
// gold-labeled nodes with MRR and Precision@K, average over rounds.

struct EvalConfig {
  std::size_t seeds_per_label = 5;
  std::size_t rounds = 3;
  std::vector<std::size_t> ks = {1, 5, 10, 20};
  std::uint64_t rng_seed = 42;
};

// Mean over the test set of 1/rank of the best-ranked gold label (1-based);
// nodes whose gold labels are absent from the list contribute 0. Returns
// nullopt (NA) when lists are truncated (list_limit < label_count), since
// the full ranking is unavailable. Throws on an empty test set or a test
// node without gold labels.
std::optional<double> mrr(std::span<const std::vector<LabelIndex>> predictions,
                          std::span<const std::vector<LabelIndex>> gold,
                          std::span<const NodeIndex> test_set, std::size_t label_count,
                          std::size_t list_limit);

// Fraction of the test set with at least one gold label among the top K
// predictions. Returns nullopt (NA) when K > list_limit.
std::optional<double> precision_at_k(std::span<const std::vector<LabelIndex>> predictions,
                                     std::span<const std::vector<LabelIndex>> gold,
                                     std::span<const NodeIndex> test_set, std::size_t K,
                                     std::size_t list_limit);

struct RoundMetrics {
  std::optional<double> mrr;
  std::vector<std::optional<double>> p_at_k;  // aligned with EvalConfig::ks
  double secs = 0.0;
  std::size_t entries = 0;  // peak label-store entries across nodes
  std::size_t seed_count = 0;
  std::size_t test_count = 0;
};

struct ProtocolReport {
  Method method = Method::kExact;
  std::vector<std::size_t> ks;
  std::vector<RoundMetrics> rounds;
  RoundMetrics mean;
  std::size_t list_limit = 0;
};

// Per round: sample `seeds_per_label` seeds uniformly per label (all of them
// when a label has fewer gold nodes, with a warning to `log`), run
// params.method for params.iterations, and score on the gold-labeled
// non-seed nodes. The report carries per-round metrics and their means.
ProtocolReport run_protocol(const Graph& graph, const SeedLabels& gold, const Hyperparams& params,
                            const EvalConfig& config, std::ostream* log = nullptr);

// Aligned-column text table / TSV with header
// `method mrr p@1 p@5 p@10 p@20 secs entries` and NA for unavailable cells.
std::string format_report_table(std::span<const ProtocolReport> reports);
std::string format_report_tsv(std::span<const ProtocolReport> reports);

}  // namespace labelprop
