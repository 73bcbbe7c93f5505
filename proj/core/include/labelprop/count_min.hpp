#pragma once

#include <memory>
#include <span>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/label_dist.hpp"
#include "labelprop/seed_labels.hpp"
#include "labelprop/types.hpp"

namespace labelprop {

// Count-min sketch baseline: every node's label distribution lives in a
// d x w counter array. Point queries return the row minimum, a one-sided
// overestimate. All nodes must share one hash family so sketches can be
// aggregated cell-wise (the sketch transform is linear).

// Pairwise-independent hashes label -> [0, w), one per row, derived from a
// seed via the classic ((a*l + b) mod p) mod w family with p = 2^61 - 1.
class CmHashFamily {
 public:
  CmHashFamily(std::size_t width, std::size_t depth, std::uint64_t seed);

  std::size_t width() const { return width_; }
  std::size_t depth() const { return depth_; }
  std::size_t cell(std::size_t row, LabelIndex label) const;

 private:
  std::size_t width_;
  std::size_t depth_;
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
};

class CountMinSketch {
 public:
  explicit CountMinSketch(std::shared_ptr<const CmHashFamily> hashes);

  std::size_t width() const { return hashes_->width(); }
  std::size_t depth() const { return hashes_->depth(); }

  // Adds `amount` (>= 0) to one cell per row.
  void update(LabelIndex label, double amount);
  // Row minimum; always >= the total amount added for `label`.
  double estimate(LabelIndex label) const;

  // Cell-wise linear operations (require a shared hash family).
  void add_scaled(const CountMinSketch& other, double alpha);
  void scale(double alpha);
  void clear();

  std::span<const double> cells() const { return cells_; }
  const std::shared_ptr<const CmHashFamily>& hashes() const { return hashes_; }

 private:
  std::shared_ptr<const CmHashFamily> hashes_;
  std::vector<double> cells_;  // row-major d x w
};

// Per-run machinery shared by the direct loop and the partitioned engine:
// one hash family for all nodes (derived from params.rng_seed), static
// sketches of the seed term and the uniform prior, the per-node update and
// the final top-k extraction (all m labels enumerated, ties by label index).
class CmPropagation {
 public:
  CmPropagation(const Graph& graph, const SeedLabels& seeds, const Hyperparams& params);

  std::size_t cells_per_node() const { return cells_per_node_; }
  const CmHashFamily& hashes() const { return *hashes_; }

  // Iteration-0 sketch: the seed distribution for seeds, uniform otherwise.
  std::vector<double> initial_node_cells(NodeIndex v) const;

  // Turns the cell-wise neighbor aggregate sum_u w_vu * sketch_u (in `acc`,
  // overwritten) into the node's next sketch.
  void combine_cells(NodeIndex v, std::span<double> acc) const;

  double estimate(std::span<const double> cells, LabelIndex label) const;
  SparseLabelDist extract_top_k(std::span<const double> cells) const;

 private:
  const Graph& graph_;
  const SeedLabels& seeds_;
  const Hyperparams& params_;
  std::shared_ptr<const CmHashFamily> hashes_;
  std::size_t cells_per_node_ = 0;
  std::vector<double> uniform_cells_;
  std::vector<double> seed_cells_;  // n * cells_per_node
};

// Propagation with a sketch per node: neighbor aggregation runs cell-wise on
// the sketches, the seed and prior terms are added as sketch updates, and
// top-k distributions are extracted once at the end.
PropagationRun run_cm_sketch(const Graph& graph, const SeedLabels& seeds,
                             const Hyperparams& params);

}  // namespace labelprop
