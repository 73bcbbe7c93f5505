#include "labelprop/bsp.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "labelprop/count_min.hpp"
#include "labelprop/exact.hpp"
#include "labelprop/freq_thresh.hpp"
#include "labelprop/parallel.hpp"
#include "labelprop/streaming.hpp"

namespace labelprop {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename Message>
struct Envelope {
  NodeIndex target = 0;
  NodeIndex source = 0;
  double weight = 0.0;
  Message payload;
};

// A kernel supplies: State, Message, initial_state(), make_message(state),
// update(v, sorted inbox span) -> State, entry_count(state) and
// extract(states) -> dists. The engine owns partitioning, message exchange,
// the superstep barrier and the deterministic inbox order.
template <typename Kernel>
PropagationRun run_engine(const Graph& graph, const Hyperparams& params, const BspOptions& options,
                          Kernel& kernel) {
  using State = typename Kernel::State;
  using Message = typename Kernel::Message;

  const std::size_t p = std::max<std::size_t>(1, options.partitions);
  const std::size_t n = graph.node_count();
  std::vector<State> state = kernel.initial_state();

  PropagationRun run;
  const auto t0 = Clock::now();
  auto track_entries = [&](std::size_t* total_out, std::size_t* max_out) {
    std::size_t total = 0;
    std::size_t max_node = 0;
    for (const State& s : state) {
      const std::size_t c = kernel.entry_count(s);
      total += c;
      max_node = std::max(max_node, c);
    }
    if (total_out) *total_out = total;
    if (max_out) *max_out = max_node;
    run.peak_stored_entries = std::max(run.peak_stored_entries, total);
    run.peak_node_entries = std::max(run.peak_node_entries, max_node);
  };
  track_entries(nullptr, nullptr);

  for (std::size_t step = 0; step < params.iterations; ++step) {
    const auto it0 = Clock::now();

    // Message passing: every node posts its previous distribution to all
    // neighbors. Buffers are per target partition.
    std::vector<std::vector<Envelope<Message>>> inboxes(p);
    std::size_t messages = 0;
    for (NodeIndex v = 0; v < n; ++v) {
      for (const Edge& e : graph.neighbors(v)) {
        inboxes[e.to % p].push_back(
            Envelope<Message>{e.to, v, e.weight, kernel.make_message(state[v])});
        ++messages;
      }
    }
    // Barrier. Buffers are sealed and handed to the owning partitions;
    // sorting by (target, source) restores the canonical epoch order no
    // matter how the messages arrived.
    for (auto& box : inboxes) {
      std::sort(box.begin(), box.end(),
                [](const Envelope<Message>& a, const Envelope<Message>& b) {
                  if (a.target != b.target) return a.target < b.target;
                  return a.source < b.source;
                });
    }

    // Label update: partitions advance independently; every node, including
    // ones with an empty inbox, recomputes its distribution from messages
    // of the previous superstep only.
    std::vector<State> next(n);
    parallel_for(p, options.workers, [&](std::size_t pi) {
      const auto& box = inboxes[pi];
      std::size_t cursor = 0;
      for (std::size_t v = pi; v < n; v += p) {
        const std::size_t begin = cursor;
        while (cursor < box.size() && box[cursor].target == v) ++cursor;
        next[v] = kernel.update(static_cast<NodeIndex>(v),
                                std::span<const Envelope<Message>>(box.data() + begin,
                                                                   cursor - begin));
      }
    });
    state = std::move(next);

    IterationStats stats;
    stats.superstep = step;
    stats.messages = messages;
    stats.secs = seconds_since(it0);
    track_entries(&stats.stored_entries, &stats.max_node_entries);
    run.iterations.push_back(stats);
    if (options.log) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", stats.secs);
      *options.log << "superstep=" << step << " msgs=" << messages << " secs=" << buf << '\n';
    }
  }

  run.dists = kernel.extract(std::move(state));
  run.total_secs = seconds_since(t0);
  return run;
}

struct StreamingKernel {
  using State = SparseLabelDist;
  using Message = SparseLabelDist;

  const Graph& graph;
  const SeedLabels& seeds;
  const Hyperparams& params;

  std::vector<State> initial_state() const { return streaming_init(graph, seeds, params); }
  Message make_message(const State& s) const { return s; }

  State update(NodeIndex v, std::span<const Envelope<Message>> inbox) const {
    TupleList list(params.uniform_prior(), params.delta_mode, /*prune=*/true);
    for (const auto& env : inbox) list.consume(env.payload, env.weight);
    return finalize_node(list, seeds.entries(v), params, graph.weighted_degree(v));
  }

  std::size_t entry_count(const State& s) const { return s.entries.size(); }
  std::vector<SparseLabelDist> extract(std::vector<State>&& state) const {
    return std::move(state);
  }
};

struct FreqThreshKernel {
  using State = SparseLabelDist;
  using Message = SparseLabelDist;

  const Graph& graph;
  const SeedLabels& seeds;
  const Hyperparams& params;

  std::vector<State> initial_state() const { return streaming_init(graph, seeds, params); }
  Message make_message(const State& s) const { return s; }

  State update(NodeIndex v, std::span<const Envelope<Message>> inbox) const {
    TupleList list(params.uniform_prior(), params.delta_mode, /*prune=*/false);
    for (const auto& env : inbox) list.consume(env.payload, env.weight);
    return freq_thresh_finalize(list, seeds.entries(v), params, graph.weighted_degree(v));
  }

  std::size_t entry_count(const State& s) const { return s.entries.size(); }
  std::vector<SparseLabelDist> extract(std::vector<State>&& state) const {
    return std::move(state);
  }
};

struct ExactKernel {
  using State = std::vector<double>;
  using Message = std::vector<double>;

  const Graph& graph;
  const SeedLabels& seeds;
  const Hyperparams& params;

  std::vector<State> initial_state() const {
    ExactState init = initialize(graph, seeds, params);
    std::vector<State> rows(graph.node_count());
    for (NodeIndex v = 0; v < graph.node_count(); ++v) {
      const auto row = init.row(v);
      rows[v].assign(row.begin(), row.end());
    }
    return rows;
  }
  Message make_message(const State& s) const { return s; }

  State update(NodeIndex v, std::span<const Envelope<Message>> inbox) const {
    std::vector<double> acc(params.label_count, 0.0);
    for (const auto& env : inbox)
      for (std::size_t l = 0; l < acc.size(); ++l) acc[l] += env.weight * env.payload[l];
    combine_row(v, acc, graph, seeds, params);
    return acc;
  }

  std::size_t entry_count(const State&) const { return params.label_count; }
  std::vector<SparseLabelDist> extract(std::vector<State>&& state) const {
    std::vector<SparseLabelDist> dists;
    dists.reserve(state.size());
    for (const auto& row : state) dists.push_back(top_k_of_dense(row, params.label_count));
    return dists;
  }
};

struct CmKernel {
  using State = std::vector<double>;
  using Message = std::vector<double>;

  const Graph& graph;
  const CmPropagation& prop;

  std::vector<State> initial_state() const {
    std::vector<State> cells(graph.node_count());
    for (NodeIndex v = 0; v < graph.node_count(); ++v) cells[v] = prop.initial_node_cells(v);
    return cells;
  }
  Message make_message(const State& s) const { return s; }

  State update(NodeIndex v, std::span<const Envelope<Message>> inbox) const {
    std::vector<double> acc(prop.cells_per_node(), 0.0);
    for (const auto& env : inbox)
      for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += env.weight * env.payload[c];
    prop.combine_cells(v, acc);
    return acc;
  }

  std::size_t entry_count(const State&) const { return prop.cells_per_node(); }
  std::vector<SparseLabelDist> extract(std::vector<State>&& state) const {
    std::vector<SparseLabelDist> dists;
    dists.reserve(state.size());
    for (const auto& cells : state) dists.push_back(prop.extract_top_k(cells));
    return dists;
  }
};

}  // namespace

PropagationRun run_bsp(const Graph& graph, const SeedLabels& seeds, const Hyperparams& params,
                       const BspOptions& options) {
  if (options.partitions < 1) throw std::invalid_argument("partition count must be >= 1");
  switch (params.method) {
    case Method::kStreaming: {
      StreamingKernel kernel{graph, seeds, params};
      return run_engine(graph, params, options, kernel);
    }
    case Method::kFreqThresh: {
      FreqThreshKernel kernel{graph, seeds, params};
      return run_engine(graph, params, options, kernel);
    }
    case Method::kExact: {
      ExactKernel kernel{graph, seeds, params};
      return run_engine(graph, params, options, kernel);
    }
    case Method::kCmSketch: {
      CmPropagation prop(graph, seeds, params);
      CmKernel kernel{graph, prop};
      return run_engine(graph, params, options, kernel);
    }
  }
  throw std::logic_error("unreachable method");
}

PartitionSummary partition_stats(const Graph& graph, std::size_t partitions) {
  if (partitions < 1) throw std::invalid_argument("partition count must be >= 1");
  PartitionSummary summary;
  summary.node_counts.assign(partitions, 0);
  summary.cross_edge_counts.assign(partitions, 0);
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    ++summary.node_counts[v % partitions];
    for (const Edge& e : graph.neighbors(v)) {
      if (e.to < v) continue;  // visit each undirected edge once
      const std::size_t pu = v % partitions;
      const std::size_t pv = e.to % partitions;
      if (pu != pv) {
        ++summary.cut_edges;
        ++summary.cross_edge_counts[pu];
        ++summary.cross_edge_counts[pv];
      }
    }
  }
  return summary;
}

}  // namespace labelprop
