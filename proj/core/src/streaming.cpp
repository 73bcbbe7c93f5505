#include "labelprop/streaming.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace labelprop {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// FP slack for the sandwich comparisons; f and the oracle aggregate sum the
// same terms in the same order but through differently grouped folds.
constexpr double kSandwichEps = 1e-9;

bool rank_greater(const std::pair<double, LabelIndex>& a, const std::pair<double, LabelIndex>& b) {
  if (a.first != b.first) return a.first > b.first;
  return a.second < b.second;
}

}  // namespace

TupleList::TupleList(double uniform_delta, DeltaMode mode, bool prune)
    : uniform_delta_(uniform_delta), mode_(mode), prune_(prune) {}

void TupleList::consume(const SparseLabelDist& msg, double edge_weight) {
  const double delta = mode_ == DeltaMode::kUniform ? uniform_delta_ : msg.residual;
  const double mass_before = processed_mass_;
  const std::uint32_t stamp = epoch_ + 1;

  // (a) labels carried by this message
  for (const auto& e : msg.entries) {
    auto [it, inserted] = tuples_.try_emplace(e.label, LabelTuple{0.0, mass_before, stamp});
    it->second.f += edge_weight * e.weight;
    it->second.last_epoch = stamp;
  }
  // (b) retained labels the message does not carry absorb the residual
  for (auto& [label, tuple] : tuples_) {
    if (tuple.last_epoch != stamp) tuple.f += edge_weight * delta;
  }
  // (c) epoch bookkeeping
  processed_mass_ = mass_before + edge_weight * delta;
  epoch_ = stamp;
  peak_size_ = std::max(peak_size_, tuples_.size());
  // (d) lossy-counting filter
  if (prune_) {
    std::erase_if(tuples_, [this](const auto& kv) {
      return kv.second.f + kv.second.delta <= processed_mass_;
    });
  }
}

double TupleList::estimate(LabelIndex l) const {
  auto it = tuples_.find(l);
  if (it != tuples_.end()) return it->second.f + it->second.delta;
  // Absent labels (pruned or never seen) are bounded by the stream's
  // residual mass; never-seen labels hit the bound exactly.
  return processed_mass_;
}

SparseLabelDist finalize_node(const TupleList& list, std::span<const LabelWeight> seed_entries,
                              const Hyperparams& params, double weighted_degree) {
  // (a) top-k candidates by f + delta, plus the node's own seed labels so a
  // high-degree stream cannot starve the mu1 term.
  std::vector<std::pair<double, LabelIndex>> ranked;
  ranked.reserve(list.tuples().size());
  for (const auto& [label, tuple] : list.tuples())
    ranked.emplace_back(tuple.f + tuple.delta, label);
  std::sort(ranked.begin(), ranked.end(), rank_greater);
  if (ranked.size() > params.k) ranked.resize(params.k);

  std::vector<LabelIndex> candidates;
  candidates.reserve(ranked.size() + seed_entries.size());
  for (const auto& [est, label] : ranked) candidates.push_back(label);
  for (const auto& e : seed_entries) {
    if (std::find(candidates.begin(), candidates.end(), e.label) == candidates.end())
      candidates.push_back(e.label);
  }

  // (b) score with the label-independent denominator of the exact update
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
    scored.push_back(LabelWeight{label, score});
  }

  // (c) re-rank by score and persist at most k entries
  sort_entries(scored);
  if (scored.size() > params.k) scored.resize(params.k);
  return make_sparse(std::move(scored), params.label_count);
}

std::vector<SparseLabelDist> streaming_init(const Graph& graph, const SeedLabels& seeds,
                                            const Hyperparams& params) {
  if (params.label_count != seeds.label_count())
    throw std::invalid_argument("params.label_count does not match the seed label vocabulary");
  std::vector<SparseLabelDist> dists(graph.node_count());
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (seeds.is_seed(v)) {
      const auto entries = seeds.entries(v);
      std::vector<LabelWeight> stored(entries.begin(), entries.end());
      sort_entries(stored);
      if (stored.size() > params.k) stored.resize(params.k);
      dists[v] = make_sparse(std::move(stored), params.label_count);
    } else {
      // no stored labels: the uniform mass lives entirely in the residual
      dists[v] = make_sparse({}, params.label_count);
    }
  }
  return dists;
}

std::vector<SparseLabelDist> streaming_step(const Graph& graph, const SeedLabels& seeds,
                                            const Hyperparams& params,
                                            const std::vector<SparseLabelDist>& previous,
                                            const TupleListObserver& observer) {
  std::vector<SparseLabelDist> next(graph.node_count());
  const double uniform = params.uniform_prior();
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    TupleList list(uniform, params.delta_mode, /*prune=*/true);
    for (const Edge& e : graph.neighbors(v)) list.consume(previous[e.to], e.weight);
    if (observer) observer(v, list);
    next[v] = finalize_node(list, seeds.entries(v), params, graph.weighted_degree(v));
  }
  return next;
}

PropagationRun run_streaming(const Graph& graph, const SeedLabels& seeds,
                             const Hyperparams& params) {
  const auto t0 = Clock::now();
  PropagationRun run;
  run.dists = streaming_init(graph, seeds, params);
  auto [entries, max_node] = count_entries(run.dists);
  run.peak_stored_entries = entries;
  run.peak_node_entries = max_node;
  for (std::size_t i = 0; i < params.iterations; ++i) {
    const auto it0 = Clock::now();
    run.dists = streaming_step(graph, seeds, params, run.dists);
    std::tie(entries, max_node) = count_entries(run.dists);
    run.peak_stored_entries = std::max(run.peak_stored_entries, entries);
    run.peak_node_entries = std::max(run.peak_node_entries, max_node);
    run.iterations.push_back(IterationStats{i, 2 * graph.edge_count(), seconds_since(it0),
                                            entries, max_node});
  }
  run.total_secs = seconds_since(t0);
  return run;
}

bool check_sandwich_bound(const TupleList& list, std::span<const double> exact_aggregate) {
  const auto& tuples = list.tuples();
  for (std::size_t l = 0; l < exact_aggregate.size(); ++l) {
    const double y = exact_aggregate[l];
    auto it = tuples.find(static_cast<LabelIndex>(l));
    if (it != tuples.end()) {
      const auto& t = it->second;
      if (t.f > y + kSandwichEps) return false;
      if (y > t.f + t.delta + kSandwichEps) return false;
    } else {
      if (y > list.processed_mass() + kSandwichEps) return false;
    }
  }
  return true;
}

}  // namespace labelprop
