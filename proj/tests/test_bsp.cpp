#include <random>
#include <sstream>

#include "doctest.h"
#include "labelprop/bsp.hpp"
#include "labelprop/count_min.hpp"
#include "labelprop/exact.hpp"
#include "labelprop/freq_thresh.hpp"
#include "labelprop/streaming.hpp"
#include "test_util.hpp"

using namespace labelprop;

namespace {

Hyperparams make_params(std::size_t m, std::size_t k, Method method, std::size_t iterations = 5) {
  Hyperparams p;
  p.label_count = m;
  p.k = k;
  p.iterations = iterations;
  p.method = method;
  return p;
}

}  // namespace

TEST_CASE("single partition is bit-identical to the direct runs") {
  std::mt19937_64 rng(401);
  auto [g, s] = testutil::random_instance(rng, 30, 5);

  SUBCASE("streaming") {
    const Hyperparams params = make_params(5, 2, Method::kStreaming);
    const PropagationRun direct = run_streaming(g, s, params);
    const PropagationRun engine = run_bsp(g, s, params, BspOptions{1, 1, nullptr});
    CHECK(testutil::same_dists(direct.dists, engine.dists));
  }
  SUBCASE("freq-thresh") {
    const Hyperparams params = make_params(5, 2, Method::kFreqThresh);
    const PropagationRun direct = run_freq_thresh(g, s, params);
    const PropagationRun engine = run_bsp(g, s, params, BspOptions{1, 1, nullptr});
    CHECK(testutil::same_dists(direct.dists, engine.dists));
  }
  SUBCASE("exact") {
    const Hyperparams params = make_params(5, 5, Method::kExact);
    const ExactResult direct = run_exact(g, s, params);
    const PropagationRun engine = run_bsp(g, s, params, BspOptions{1, 1, nullptr});
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      const auto dense = to_dense(engine.dists[v], 5);
      const auto row = direct.row(v);
      for (std::size_t l = 0; l < 5; ++l) CHECK(dense[l] == row[l]);  // bitwise
    }
  }
  SUBCASE("cm-sketch") {
    Hyperparams params = make_params(5, 3, Method::kCmSketch);
    params.cm_width = 16;
    params.cm_depth = 2;
    const PropagationRun direct = run_cm_sketch(g, s, params);
    const PropagationRun engine = run_bsp(g, s, params, BspOptions{1, 1, nullptr});
    CHECK(testutil::same_dists(direct.dists, engine.dists));
  }
}

TEST_CASE("outputs are invariant in the partition count") {
  std::mt19937_64 rng(411);
  auto [g, s] = testutil::random_instance(rng, 60, 7);
  const Hyperparams params = make_params(7, 3, Method::kStreaming);
  const PropagationRun base = run_bsp(g, s, params, BspOptions{1, 1, nullptr});
  for (std::size_t p : {2, 3, 7, 8}) {
    const PropagationRun run = run_bsp(g, s, params, BspOptions{p, 1, nullptr});
    CHECK(testutil::same_dists(base.dists, run.dists));
  }
}

TEST_CASE("more partitions than nodes still works") {
  std::mt19937_64 rng(421);
  auto [g, s] = testutil::random_instance(rng, 6, 3);
  const Hyperparams params = make_params(3, 2, Method::kStreaming);
  const PropagationRun base = run_bsp(g, s, params, BspOptions{1, 1, nullptr});
  const PropagationRun wide = run_bsp(g, s, params, BspOptions{50, 1, nullptr});
  CHECK(testutil::same_dists(base.dists, wide.dists));
}

TEST_CASE("outputs are invariant in the worker count") {
  std::mt19937_64 rng(431);
  auto [g, s] = testutil::random_instance(rng, 50, 6);
  for (Method method : {Method::kStreaming, Method::kExact}) {
    const Hyperparams params = make_params(6, 3, method);
    const PropagationRun one = run_bsp(g, s, params, BspOptions{4, 1, nullptr});
    const PropagationRun four = run_bsp(g, s, params, BspOptions{4, 4, nullptr});
    CHECK(testutil::same_dists(one.dists, four.dists));
  }
}

TEST_CASE("message volume per superstep is twice the edge count") {
  std::mt19937_64 rng(441);
  auto [g, s] = testutil::random_instance(rng, 40, 4);
  const Hyperparams params = make_params(4, 2, Method::kStreaming, 3);
  const PropagationRun run = run_bsp(g, s, params, BspOptions{3, 1, nullptr});
  REQUIRE(run.iterations.size() == 3);
  for (const auto& it : run.iterations) CHECK(it.messages == 2 * g.edge_count());
}

TEST_CASE("strict superstep barrier: one superstep equals one direct step") {
  // Messages sent in superstep i must be consumed in i+1 only; with a single
  // iteration the engine output has to match one streaming_step from the
  // initial state.
  std::mt19937_64 rng(451);
  auto [g, s] = testutil::random_instance(rng, 25, 4);
  const Hyperparams params = make_params(4, 2, Method::kStreaming, 1);
  const PropagationRun engine = run_bsp(g, s, params, BspOptions{4, 1, nullptr});
  const auto direct = streaming_step(g, s, params, streaming_init(g, s, params));
  CHECK(testutil::same_dists(engine.dists, direct));
}

TEST_CASE("superstep log lines have the documented shape") {
  std::mt19937_64 rng(461);
  auto [g, s] = testutil::random_instance(rng, 10, 3);
  const Hyperparams params = make_params(3, 2, Method::kStreaming, 2);
  std::ostringstream log;
  BspOptions options;
  options.log = &log;
  run_bsp(g, s, params, options);
  const std::string text = log.str();
  CHECK(text.find("superstep=0 msgs=") != std::string::npos);
  CHECK(text.find("superstep=1 msgs=") != std::string::npos);
  CHECK(text.find(" secs=") != std::string::npos);
}

TEST_CASE("partition_stats: single partition has no cut") {
  std::mt19937_64 rng(471);
  auto [g, s] = testutil::random_instance(rng, 20, 3);
  const PartitionSummary summary = partition_stats(g, 1);
  CHECK(summary.cut_edges == 0);
  CHECK(summary.node_counts[0] == g.node_count());
}

TEST_CASE("partition_stats: K4 split two ways cuts four edges") {
  Graph::Builder gb;
  for (int i = 0; i < 4; ++i) gb.add_node(testutil::zname("n", i));
  for (NodeIndex i = 0; i < 4; ++i)
    for (NodeIndex j = i + 1; j < 4; ++j) gb.add_edge(i, j, 1.0);
  Graph g = std::move(gb).build();
  const PartitionSummary summary = partition_stats(g, 2);
  CHECK(summary.node_counts[0] == 2);
  CHECK(summary.node_counts[1] == 2);
  CHECK(summary.cut_edges == 4);
  CHECK(summary.cross_edge_counts[0] == 4);
  CHECK(summary.cross_edge_counts[1] == 4);
}

TEST_CASE("partition_stats: empty graph reports zeros") {
  Graph g;
  const PartitionSummary summary = partition_stats(g, 3);
  CHECK(summary.cut_edges == 0);
  for (std::size_t p = 0; p < 3; ++p) {
    CHECK(summary.node_counts[p] == 0);
    CHECK(summary.cross_edge_counts[p] == 0);
  }
}

TEST_CASE("peak store instrumentation is tracked through the engine") {
  std::mt19937_64 rng(481);
  auto [g, s] = testutil::random_instance(rng, 30, 8);
  const Hyperparams params = make_params(8, 3, Method::kStreaming);
  const PropagationRun run = run_bsp(g, s, params, BspOptions{2, 1, nullptr});
  CHECK(run.peak_node_entries <= 3);
  CHECK(run.peak_stored_entries <= 3 * g.node_count());
  CHECK(run.peak_stored_entries > 0);
}
