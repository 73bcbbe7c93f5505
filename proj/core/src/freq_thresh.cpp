#include "labelprop/freq_thresh.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace labelprop {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

SparseLabelDist freq_thresh_finalize(const TupleList& list,
                                     std::span<const LabelWeight> seed_entries,
                                     const Hyperparams& params, double weighted_degree) {
  // With pruning disabled, f + delta is the exact aggregate of every label
  // the stream carried; score them all, then threshold and truncate.
  std::vector<LabelIndex> candidates;
  candidates.reserve(list.tuples().size() + seed_entries.size());
  for (const auto& [label, tuple] : list.tuples()) candidates.push_back(label);
  for (const auto& e : seed_entries) {
    if (list.tuples().find(e.label) == list.tuples().end()) candidates.push_back(e.label);
  }

  const double s = seed_entries.empty() ? 0.0 : 1.0;
  const double denom = params.mu1 * s + params.mu2 * weighted_degree + params.mu3;
  if (denom <= 0) throw std::logic_error("update denominator is zero while finalizing a node");
  const double prior = params.mu3 * params.uniform_prior();

  std::vector<LabelWeight> scored;
  scored.reserve(candidates.size());
  for (LabelIndex label : candidates) {
    double seed_weight = 0.0;
    for (const auto& e : seed_entries) {
      if (e.label == label) {
        seed_weight = e.weight;
        break;
      }
    }
    const double score =
        (params.mu1 * seed_weight + params.mu2 * list.estimate(label) + prior) / denom;
    if (score < params.freq_threshold) continue;  // zero out small weights
    scored.push_back(LabelWeight{label, score});
  }
  sort_entries(scored);
  if (scored.size() > params.k) scored.resize(params.k);
  return make_sparse(std::move(scored), params.label_count);
}

std::vector<SparseLabelDist> freq_thresh_step(const Graph& graph, const SeedLabels& seeds,
                                              const Hyperparams& params,
                                              const std::vector<SparseLabelDist>& previous) {
  std::vector<SparseLabelDist> next(graph.node_count());
  const double uniform = params.uniform_prior();
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    TupleList list(uniform, params.delta_mode, /*prune=*/false);
    for (const Edge& e : graph.neighbors(v)) list.consume(previous[e.to], e.weight);
    next[v] = freq_thresh_finalize(list, seeds.entries(v), params, graph.weighted_degree(v));
  }
  return next;
}

PropagationRun run_freq_thresh(const Graph& graph, const SeedLabels& seeds,
                               const Hyperparams& params) {
  if (params.freq_threshold <= 0) throw std::invalid_argument("freq-threshold must be positive");
  const auto t0 = Clock::now();
  PropagationRun run;
  run.dists = streaming_init(graph, seeds, params);
  auto [entries, max_node] = count_entries(run.dists);
  run.peak_stored_entries = entries;
  run.peak_node_entries = max_node;
  for (std::size_t i = 0; i < params.iterations; ++i) {
    const auto it0 = Clock::now();
    run.dists = freq_thresh_step(graph, seeds, params, run.dists);
    std::tie(entries, max_node) = count_entries(run.dists);
    run.peak_stored_entries = std::max(run.peak_stored_entries, entries);
    run.peak_node_entries = std::max(run.peak_node_entries, max_node);
    run.iterations.push_back(IterationStats{i, 2 * graph.edge_count(), seconds_since(it0),
                                            entries, max_node});
  }
  run.total_secs = seconds_since(t0);
  return run;
}

}  // namespace labelprop
