#pragma once

#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/label_dist.hpp"
#include "labelprop/seed_labels.hpp"
#include "labelprop/types.hpp"

namespace labelprop {

// Streaming top-k aggregation: one node's neighbor messages are processed as
// weighted epochs through a lossy-counting tuple list, keeping per-node
// storage at O(k) while bounding the estimation error of every retained
// label (f <= y <= f + delta against the literal message stream).

struct LabelTuple {
  double f = 0.0;      // accumulated weighted probability since insertion
  double delta = 0.0;  // maximum estimation error (mass before insertion)
  std::uint32_t last_epoch = 0;
};

// Accumulator for one node's aggregation pass. Each consumed neighbor is one
// epoch t with edge weight w_t; `processed_mass` tracks sum_{i<=t} w_i *
// delta_i, the running residual mass of the stream.
class TupleList {
 public:
  // `uniform_delta` (1/m) replaces the per-message residual in
  // DeltaMode::kUniform. `prune` disables the lossy-counting filter; the
  // frequency-thresholding baseline reuses the list as an exact aggregator.
  TupleList(double uniform_delta, DeltaMode mode, bool prune);

  // One epoch:
  //  (a) labels in `msg` update or insert tuples (delta = mass before),
  //  (b) retained tuples absent from `msg` absorb w * delta_msg,
  //  (c) processed mass and epoch advance,
  //  (d) tuples with f + delta <= processed mass are pruned.
  void consume(const SparseLabelDist& msg, double edge_weight);

  double processed_mass() const { return processed_mass_; }
  std::size_t epochs() const { return epoch_; }
  std::size_t size() const { return tuples_.size(); }
  std::size_t peak_size() const { return peak_size_; }
  const std::unordered_map<LabelIndex, LabelTuple>& tuples() const { return tuples_; }

  // Upper estimate of the label's exact stream aggregate: f + delta for a
  // retained tuple, the processed mass for an absent label.
  double estimate(LabelIndex l) const;

 private:
  std::unordered_map<LabelIndex, LabelTuple> tuples_;
  double processed_mass_ = 0.0;
  double uniform_delta_ = 0.0;
  std::uint32_t epoch_ = 0;
  DeltaMode mode_ = DeltaMode::kAdaptive;
  bool prune_ = true;
  std::size_t peak_size_ = 0;
};

// Ranks tuples by f + delta (label index breaks ties), keeps the top k
// candidates plus the node's own seed labels, scores each candidate with the
// label-independent denominator M_v = mu1*s_vv + mu2*weighted_degree + mu3,
// re-ranks by score and stores the top k with the residual of the rest.
SparseLabelDist finalize_node(const TupleList& list, std::span<const LabelWeight> seed_entries,
                              const Hyperparams& params, double weighted_degree);

// Iteration 0: seed nodes store their (at most k) seed labels, unlabeled
// nodes store nothing and carry the uniform mass in the residual.
std::vector<SparseLabelDist> streaming_init(const Graph& graph, const SeedLabels& seeds,
                                            const Hyperparams& params);

// Invoked per node after all neighbors are consumed, before finalize.
using TupleListObserver = std::function<void(NodeIndex, const TupleList&)>;

// One full round over all nodes; every node consumes its neighbors in
// ascending index order against the immutable `previous` snapshot.
std::vector<SparseLabelDist> streaming_step(const Graph& graph, const SeedLabels& seeds,
                                            const Hyperparams& params,
                                            const std::vector<SparseLabelDist>& previous,
                                            const TupleListObserver& observer = {});

PropagationRun run_streaming(const Graph& graph, const SeedLabels& seeds,
                             const Hyperparams& params);

// True iff every retained tuple sandwiches the exact aggregate of the
// message stream (f <= y <= f + delta) and every absent label's aggregate is
// at most the processed mass. `exact_aggregate` must come from an
// independent oracle over the same stream.
bool check_sandwich_bound(const TupleList& list, std::span<const double> exact_aggregate);

}  // namespace labelprop
