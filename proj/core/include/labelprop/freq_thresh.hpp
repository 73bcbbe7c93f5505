#pragma once

#include <vector>

#include "labelprop/graph.hpp"
#include "labelprop/label_dist.hpp"
#include "labelprop/seed_labels.hpp"
#include "labelprop/streaming.hpp"
#include "labelprop/types.hpp"

namespace labelprop {

// Frequency-thresholding baseline: the full map-form aggregate of all
// neighbor messages (cost O(degree * k) per node) is scored, entries below
// `params.freq_threshold` are zeroed out, and the top k are kept.

SparseLabelDist freq_thresh_finalize(const TupleList& list,
                                     std::span<const LabelWeight> seed_entries,
                                     const Hyperparams& params, double weighted_degree);

std::vector<SparseLabelDist> freq_thresh_step(const Graph& graph, const SeedLabels& seeds,
                                              const Hyperparams& params,
                                              const std::vector<SparseLabelDist>& previous);

PropagationRun run_freq_thresh(const Graph& graph, const SeedLabels& seeds,
                               const Hyperparams& params);

}  // namespace labelprop
