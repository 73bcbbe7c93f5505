#include "labelprop/count_min.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <stdexcept>

namespace labelprop {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr std::uint64_t kPrime = (1ULL << 61) - 1;  // Mersenne prime

}  // namespace

CmHashFamily::CmHashFamily(std::size_t width, std::size_t depth, std::uint64_t seed)
    : width_(width), depth_(depth) {
  if (width == 0 || depth == 0) throw std::invalid_argument("sketch width and depth must be > 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> draw_a(1, kPrime - 1);
  std::uniform_int_distribution<std::uint64_t> draw_b(0, kPrime - 1);
  a_.reserve(depth);
  b_.reserve(depth);
  for (std::size_t r = 0; r < depth; ++r) {
    a_.push_back(draw_a(rng));
    b_.push_back(draw_b(rng));
  }
}

std::size_t CmHashFamily::cell(std::size_t row, LabelIndex label) const {
  const unsigned __int128 x = static_cast<unsigned __int128>(a_[row]) * label + b_[row];
  return static_cast<std::size_t>(static_cast<std::uint64_t>(x % kPrime) % width_);
}

CountMinSketch::CountMinSketch(std::shared_ptr<const CmHashFamily> hashes)
    : hashes_(std::move(hashes)), cells_(hashes_->width() * hashes_->depth(), 0.0) {}

void CountMinSketch::update(LabelIndex label, double amount) {
  if (amount < 0) throw std::invalid_argument("count-min updates must be non-negative");
  const std::size_t w = hashes_->width();
  for (std::size_t r = 0; r < hashes_->depth(); ++r)
    cells_[r * w + hashes_->cell(r, label)] += amount;
}

double CountMinSketch::estimate(LabelIndex label) const {
  const std::size_t w = hashes_->width();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < hashes_->depth(); ++r)
    best = std::min(best, cells_[r * w + hashes_->cell(r, label)]);
  return best;
}

void CountMinSketch::add_scaled(const CountMinSketch& other, double alpha) {
  if (other.hashes_ != hashes_)
    throw std::invalid_argument("sketch aggregation requires a shared hash family");
  for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += alpha * other.cells_[i];
}

void CountMinSketch::scale(double alpha) {
  for (double& c : cells_) c *= alpha;
}

void CountMinSketch::clear() { std::fill(cells_.begin(), cells_.end(), 0.0); }

CmPropagation::CmPropagation(const Graph& graph, const SeedLabels& seeds,
                             const Hyperparams& params)
    : graph_(graph), seeds_(seeds), params_(params) {
  if (params.label_count != seeds.label_count())
    throw std::invalid_argument("params.label_count does not match the seed label vocabulary");
  if (params.cm_width == 0 || params.cm_depth == 0)
    throw std::invalid_argument("cm-width and cm-depth must be positive");
  hashes_ = std::make_shared<const CmHashFamily>(params.cm_width, params.cm_depth,
                                                 mix_seed(params.rng_seed, 0x636d736bULL));
  cells_per_node_ = params.cm_width * params.cm_depth;

  uniform_cells_.assign(cells_per_node_, 0.0);
  const double u = params.uniform_prior();
  for (std::size_t r = 0; r < hashes_->depth(); ++r)
    for (LabelIndex l = 0; l < params.label_count; ++l)
      uniform_cells_[r * hashes_->width() + hashes_->cell(r, l)] += u;

  seed_cells_.assign(graph.node_count() * cells_per_node_, 0.0);
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    double* cells = seed_cells_.data() + static_cast<std::size_t>(v) * cells_per_node_;
    for (const auto& e : seeds.entries(v))
      for (std::size_t r = 0; r < hashes_->depth(); ++r)
        cells[r * hashes_->width() + hashes_->cell(r, e.label)] += e.weight;
  }
}

std::vector<double> CmPropagation::initial_node_cells(NodeIndex v) const {
  if (seeds_.is_seed(v)) {
    const double* sc = seed_cells_.data() + static_cast<std::size_t>(v) * cells_per_node_;
    return {sc, sc + cells_per_node_};
  }
  return uniform_cells_;
}

void CmPropagation::combine_cells(NodeIndex v, std::span<double> acc) const {
  const double s = seeds_.is_seed(v) ? 1.0 : 0.0;
  const double denom = params_.mu1 * s + params_.mu2 * graph_.weighted_degree(v) + params_.mu3;
  if (denom <= 0)
    throw std::logic_error("update denominator is zero at node '" + graph_.node_id(v) + "'");
  const double* sc = seed_cells_.data() + static_cast<std::size_t>(v) * cells_per_node_;
  for (std::size_t c = 0; c < cells_per_node_; ++c)
    acc[c] = (params_.mu1 * sc[c] + params_.mu2 * acc[c] + params_.mu3 * uniform_cells_[c]) /
             denom;
}

double CmPropagation::estimate(std::span<const double> cells, LabelIndex label) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < hashes_->depth(); ++r)
    best = std::min(best, cells[r * hashes_->width() + hashes_->cell(r, label)]);
  return best;
}

SparseLabelDist CmPropagation::extract_top_k(std::span<const double> cells) const {
  std::vector<LabelWeight> entries;
  entries.reserve(params_.label_count);
  for (LabelIndex l = 0; l < params_.label_count; ++l)
    entries.push_back(LabelWeight{l, estimate(cells, l)});
  sort_entries(entries);
  if (entries.size() > params_.k) entries.resize(params_.k);
  return make_sparse(std::move(entries), params_.label_count);
}

PropagationRun run_cm_sketch(const Graph& graph, const SeedLabels& seeds,
                             const Hyperparams& params) {
  const auto t0 = Clock::now();
  const std::size_t n = graph.node_count();
  CmPropagation prop(graph, seeds, params);
  const std::size_t cpn = prop.cells_per_node();

  std::vector<double> state(n * cpn, 0.0);
  for (NodeIndex v = 0; v < n; ++v) {
    const auto init = prop.initial_node_cells(v);
    std::copy(init.begin(), init.end(), state.begin() + static_cast<std::size_t>(v) * cpn);
  }

  PropagationRun run;
  std::vector<double> next(state.size(), 0.0);
  for (std::size_t i = 0; i < params.iterations; ++i) {
    const auto it0 = Clock::now();
    for (NodeIndex v = 0; v < n; ++v) {
      double* out = next.data() + static_cast<std::size_t>(v) * cpn;
      std::fill(out, out + cpn, 0.0);
      for (const Edge& e : graph.neighbors(v)) {
        const double* msg = state.data() + static_cast<std::size_t>(e.to) * cpn;
        for (std::size_t c = 0; c < cpn; ++c) out[c] += e.weight * msg[c];
      }
      prop.combine_cells(v, {out, cpn});
    }
    std::swap(state, next);
    run.iterations.push_back(
        IterationStats{i, 2 * graph.edge_count(), seconds_since(it0), n * cpn, cpn});
  }

  run.dists.reserve(n);
  for (NodeIndex v = 0; v < n; ++v)
    run.dists.push_back(prop.extract_top_k({state.data() + static_cast<std::size_t>(v) * cpn, cpn}));
  // The label store of this method is the sketch itself.
  run.peak_stored_entries = n * cpn;
  run.peak_node_entries = cpn;
  run.total_secs = seconds_since(t0);
  return run;
}

}  // namespace labelprop
