#include "labelprop/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace labelprop {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Every node needs mu1*s_vv + mu2*wdeg(v) + mu3 > 0; with mu3 = 0 an
// isolated unlabeled node would have a zero denominator.
void check_denominators(const Graph& graph, const SeedLabels& seeds, const Hyperparams& params) {
  if (params.mu3 > 0) return;
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    const double s = seeds.is_seed(v) ? 1.0 : 0.0;
    if (params.mu1 * s + params.mu2 * graph.weighted_degree(v) <= 0)
      throw std::invalid_argument("update denominator is zero at node '" + graph.node_id(v) +
                                  "' (mu3 = 0 and the node is unlabeled and isolated)");
  }
}

}  // namespace

ExactState initialize(const Graph& graph, const SeedLabels& seeds, const Hyperparams& params) {
  if (params.label_count != seeds.label_count())
    throw std::invalid_argument("params.label_count does not match the seed label vocabulary");
  const std::size_t n = graph.node_count();
  const std::size_t m = params.label_count;
  ExactState state;
  state.node_count = n;
  state.label_count = m;
  state.current.assign(n * m, 0.0);
  state.previous.assign(n * m, 0.0);
  const double uniform = params.uniform_prior();
  for (NodeIndex v = 0; v < n; ++v) {
    auto row = state.row(v);
    if (seeds.is_seed(v)) {
      for (const auto& e : seeds.entries(v)) row[e.label] = e.weight;
    } else {
      std::fill(row.begin(), row.end(), uniform);
    }
  }
  return state;
}

std::vector<double> jacobi_row(NodeIndex v, std::span<const double> previous, const Graph& graph,
                               const SeedLabels& seeds, const Hyperparams& params) {
  const std::size_t m = params.label_count;
  std::vector<double> acc(m, 0.0);
  for (const Edge& e : graph.neighbors(v)) {
    const double* prev_row = previous.data() + static_cast<std::size_t>(e.to) * m;
    for (std::size_t l = 0; l < m; ++l) acc[l] += e.weight * prev_row[l];
  }
  combine_row(v, acc, graph, seeds, params);
  return acc;
}

void combine_row(NodeIndex v, std::span<double> acc, const Graph& graph, const SeedLabels& seeds,
                 const Hyperparams& params) {
  const std::size_t m = params.label_count;
  const double s = seeds.is_seed(v) ? 1.0 : 0.0;
  const double denom = params.mu1 * s + params.mu2 * graph.weighted_degree(v) + params.mu3;
  if (denom <= 0)
    throw std::logic_error("update denominator is zero at node '" + graph.node_id(v) + "'");
  const double prior = params.mu3 * params.uniform_prior();
  const auto seed_entries = seeds.entries(v);
  std::size_t si = 0;
  for (std::size_t l = 0; l < m; ++l) {
    double seed_weight = 0.0;  // s_vv * Y_vl; entries exist only for seeds
    if (si < seed_entries.size() && seed_entries[si].label == l) {
      seed_weight = seed_entries[si].weight;
      ++si;
    }
    acc[l] = (params.mu1 * seed_weight + params.mu2 * acc[l] + prior) / denom;
  }
}

void jacobi_update(ExactState& state, const Graph& graph, const SeedLabels& seeds,
                   const Hyperparams& params) {
  std::swap(state.current, state.previous);
  const std::size_t m = state.label_count;
  for (NodeIndex v = 0; v < state.node_count; ++v) {
    const auto row = jacobi_row(v, state.previous, graph, seeds, params);
    std::copy(row.begin(), row.end(), state.current.begin() + static_cast<std::size_t>(v) * m);
  }
}

double objective(std::span<const double> rows, const Graph& graph, const SeedLabels& seeds,
                 const Hyperparams& params) {
  const std::size_t m = params.label_count;
  const double uniform = params.uniform_prior();
  double seed_term = 0.0;
  double edge_term = 0.0;
  double prior_term = 0.0;
  std::vector<double> diff(m);
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    const double* row = rows.data() + static_cast<std::size_t>(v) * m;
    if (seeds.is_seed(v)) {
      std::copy(row, row + m, diff.begin());
      for (const auto& e : seeds.entries(v)) diff[e.label] -= e.weight;
      double sq = 0.0;
      for (std::size_t l = 0; l < m; ++l) sq += diff[l] * diff[l];
      seed_term += sq;
    }
    // ordered pairs: each undirected edge contributes once per direction
    for (const Edge& e : graph.neighbors(v)) {
      const double* other = rows.data() + static_cast<std::size_t>(e.to) * m;
      double sq = 0.0;
      for (std::size_t l = 0; l < m; ++l) {
        const double d = row[l] - other[l];
        sq += d * d;
      }
      edge_term += e.weight * sq;
    }
    double sq = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
      const double d = row[l] - uniform;
      sq += d * d;
    }
    prior_term += sq;
  }
  return params.mu1 * seed_term + params.mu2 * edge_term + params.mu3 * prior_term;
}

ExactResult run_exact(const Graph& graph, const SeedLabels& seeds, const Hyperparams& params) {
  check_denominators(graph, seeds, params);
  const auto t0 = Clock::now();
  ExactState state = initialize(graph, seeds, params);
  ExactResult result;
  result.label_count = state.label_count;
  result.objectives.reserve(params.iterations + 1);
  result.objectives.push_back(objective(state.current, graph, seeds, params));
  for (std::size_t i = 0; i < params.iterations; ++i) {
    const auto it0 = Clock::now();
    jacobi_update(state, graph, seeds, params);
    ++result.iterations_run;
    result.iteration_secs.push_back(seconds_since(it0));
    result.objectives.push_back(objective(state.current, graph, seeds, params));
    if (params.tol > 0) {
      double max_change = 0.0;
      for (std::size_t j = 0; j < state.current.size(); ++j)
        max_change = std::max(max_change, std::abs(state.current[j] - state.previous[j]));
      if (max_change < params.tol) break;
    }
  }
  result.rows = std::move(state.current);
  result.total_secs = seconds_since(t0);
  return result;
}

std::vector<SparseLabelDist> exact_to_dists(const ExactResult& result) {
  const std::size_t m = result.label_count;
  const std::size_t n = m == 0 ? 0 : result.rows.size() / m;
  std::vector<SparseLabelDist> dists;
  dists.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) dists.push_back(top_k_of_dense(result.row(v), m));
  return dists;
}

}  // namespace labelprop
