#pragma once

#include <span>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/label_dist.hpp"
#include "labelprop/seed_labels.hpp"
#include "labelprop/types.hpp"

namespace labelprop {

// Dense reference implementation of the propagation objective and its Jacobi
// optimizer. This is the correctness oracle every approximate label store is
// checked against.

// Row-major n*m snapshots of two consecutive iterations.
struct ExactState {
  std::size_t node_count = 0;
  std::size_t label_count = 0;
  std::vector<double> current;
  std::vector<double> previous;

  std::span<double> row(NodeIndex v) {
    return {current.data() + static_cast<std::size_t>(v) * label_count, label_count};
  }
  std::span<const double> row(NodeIndex v) const {
    return {current.data() + static_cast<std::size_t>(v) * label_count, label_count};
  }
};

// Seed rows start at their normalized seed distribution, all other rows at
// the uniform distribution 1/m.
ExactState initialize(const Graph& graph, const SeedLabels& seeds, const Hyperparams& params);

// One Jacobi sweep: every row of `current` is recomputed solely from
// `previous` (which receives the old `current` first). Rows remain
// distributions because the denominator is label-independent.
void jacobi_update(ExactState& state, const Graph& graph, const SeedLabels& seeds,
                   const Hyperparams& params);

// Single-row update against an arbitrary previous snapshot; `jacobi_update`
// is exactly this applied to every node.
std::vector<double> jacobi_row(NodeIndex v, std::span<const double> previous, const Graph& graph,
                               const SeedLabels& seeds, const Hyperparams& params);

// Turns a neighbor aggregate sum_u w_vu * prev_u (in `acc`, overwritten) into
// the updated row. Shared with the partitioned engine so both paths are
// bit-identical.
void combine_row(NodeIndex v, std::span<double> acc, const Graph& graph, const SeedLabels& seeds,
                 const Hyperparams& params);

// mu1 * sum_{seeds} ||Y_hat_v - Y_v||^2 + mu2 * sum_{v, u in N(v)} w_vu *
// ||Y_hat_v - Y_hat_u||^2 + mu3 * sum_v ||Y_hat_v - U||^2. The edge sum runs
// over ordered pairs, so each undirected edge contributes twice.
double objective(std::span<const double> rows, const Graph& graph, const SeedLabels& seeds,
                 const Hyperparams& params);

struct ExactResult {
  std::vector<double> rows;  // final n*m snapshot
  std::size_t label_count = 0;
  std::vector<double> objectives;  // objective after 0..iterations sweeps
  std::vector<double> iteration_secs;
  std::size_t iterations_run = 0;
  double total_secs = 0.0;

  std::span<const double> row(NodeIndex v) const {
    return {rows.data() + static_cast<std::size_t>(v) * label_count, label_count};
  }
};

// Runs `params.iterations` sweeps (fixed count; `params.tol` > 0 adds an
// early exit on max-abs row change) and records the objective per iteration.
ExactResult run_exact(const Graph& graph, const SeedLabels& seeds, const Hyperparams& params);

// Full ranking of every row as SparseLabelDist (all m entries, residual 0).
std::vector<SparseLabelDist> exact_to_dists(const ExactResult& result);

}  // namespace labelprop
