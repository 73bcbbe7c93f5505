// End-to-end tests of the labelprop binary. Each test runs the tool in a
// scratch directory and inspects files, stdout/stderr captures and exit
// codes.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "labelprop/exact.hpp"
#include "labelprop/io.hpp"

using namespace labelprop;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Scratch {
 public:
  Scratch() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("labelprop_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path p = path(name);
    std::ofstream out(p);
    out << content;
    return p;
  }

  RunResult run(const std::string& args) const {
    const fs::path out = path("stdout.txt");
    const fs::path err = path("stderr.txt");
    const std::string cmd = std::string(LABELPROP_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
  }

 private:
  fs::path dir_;
};

const char* kTinyGraph =
    "a\tb\t1.0\n"
    "b\tc\t1.0\n"
    "c\td\t2.0\n"
    "d\ta\t1.0\n";
const char* kTinySeeds =
    "a\tX\t1.0\n"
    "c\tY\t1.0\n";

}  // namespace

TEST_CASE("propagate --method exact matches the golden output of the dense oracle") {
  Scratch scratch;
  const auto graph_path = scratch.write("g.tsv", kTinyGraph);
  const auto seeds_path = scratch.write("s.tsv", kTinySeeds);

  // golden file straight from the library's dense oracle
  const Graph graph = load_graph(graph_path.string());
  const SeedLabels seeds = load_seeds(seeds_path.string(), graph);
  Hyperparams params;
  params.label_count = seeds.label_count();
  params.iterations = 10;
  const ExactResult oracle = run_exact(graph, seeds, params);
  std::ostringstream golden;
  write_output(golden, graph, seeds, exact_to_dists(oracle));

  const RunResult run = scratch.run("propagate --graph " + graph_path.string() + " --seeds " +
                                    seeds_path.string() + " --method exact --iterations 10 " +
                                    "--output " + scratch.path("out.tsv").string());
  CHECK(run.exit_code == 0);
  CHECK(slurp(scratch.path("out.tsv")) == golden.str());
  CHECK(run.err.find("iteration=0 objective=") != std::string::npos);
  CHECK(run.err.find("iteration=10 objective=") != std::string::npos);
}

TEST_CASE("propagate partition counts do not change the output") {
  Scratch scratch;
  const auto graph_path = scratch.write("g.tsv", kTinyGraph);
  const auto seeds_path = scratch.write("s.tsv", kTinySeeds);
  const std::string base = "propagate --graph " + graph_path.string() + " --seeds " +
                           seeds_path.string() + " --method streaming --k 1 --iterations 6 ";
  const RunResult p1 =
      scratch.run(base + "--partitions 1 --output " + scratch.path("p1.tsv").string());
  const RunResult p4 =
      scratch.run(base + "--partitions 4 --output " + scratch.path("p4.tsv").string());
  CHECK(p1.exit_code == 0);
  CHECK(p4.exit_code == 0);
  CHECK(slurp(scratch.path("p1.tsv")) == slurp(scratch.path("p4.tsv")));
  CHECK(p4.err.find("superstep=") != std::string::npos);
}

TEST_CASE("missing required flags exit with the usage code") {
  Scratch scratch;
  const auto graph_path = scratch.write("g.tsv", kTinyGraph);
  const RunResult run = scratch.run("propagate --graph " + graph_path.string());
  CHECK(run.exit_code == 2);
  CHECK(run.err.find("--seeds") != std::string::npos);
}

TEST_CASE("runtime failures exit with code 1") {
  Scratch scratch;
  const auto seeds_path = scratch.write("s.tsv", kTinySeeds);
  const RunResult run =
      scratch.run("propagate --graph /nonexistent.tsv --seeds " + seeds_path.string());
  CHECK(run.exit_code == 1);
  CHECK(run.err.find("error:") != std::string::npos);

  // malformed graph content (self-loop) also lands on 1 with a line number
  const auto bad = scratch.write("bad.tsv", "a\ta\t1.0\n");
  const RunResult run2 =
      scratch.run("propagate --graph " + bad.string() + " --seeds " + seeds_path.string());
  CHECK(run2.exit_code == 1);
  CHECK(run2.err.find("bad.tsv:1") != std::string::npos);
}

TEST_CASE("gen-synthetic is deterministic and feeds the other subcommands") {
  Scratch scratch;
  const std::string gen = "gen-synthetic --clusters 2 --nodes-per-cluster 30 --intra 0.3 "
                          "--inter 0.02 --seeds-per-cluster 3 --rng-seed 5 ";
  const RunResult a = scratch.run(gen + "--out-graph " + scratch.path("ga.tsv").string() +
                                  " --out-gold " + scratch.path("golda.tsv").string() +
                                  " --out-seeds " + scratch.path("sa.tsv").string());
  const RunResult b = scratch.run(gen + "--out-graph " + scratch.path("gb.tsv").string() +
                                  " --out-gold " + scratch.path("goldb.tsv").string() +
                                  " --out-seeds " + scratch.path("sb.tsv").string());
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(slurp(scratch.path("ga.tsv")) == slurp(scratch.path("gb.tsv")));
  CHECK(slurp(scratch.path("golda.tsv")) == slurp(scratch.path("goldb.tsv")));
  CHECK(slurp(scratch.path("sa.tsv")) == slurp(scratch.path("sb.tsv")));

  const RunResult eval = scratch.run("evaluate --graph " + scratch.path("ga.tsv").string() +
                                     " --gold " + scratch.path("golda.tsv").string() +
                                     " --methods exact,streaming --k 2 --ks 1,2 "
                                     "--seeds-per-label 3 --rounds 2 --format tsv");
  CHECK(eval.exit_code == 0);
  CHECK(eval.out.find("method\tmrr\tp@1\tp@2\tsecs\tentries") == 0);
  CHECK(eval.out.find("exact\t") != std::string::npos);
  CHECK(eval.out.find("streaming\t") != std::string::npos);
}

TEST_CASE("partition-stats prints per-partition rows and the cut") {
  Scratch scratch;
  const auto graph_path = scratch.write("g.tsv", kTinyGraph);
  const RunResult run =
      scratch.run("partition-stats --graph " + graph_path.string() + " --partitions 2");
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("partition\tnodes\tcross_edges") == 0);
  CHECK(run.out.find("cut_edges\t") != std::string::npos);
}

TEST_CASE("augment wires embeddings into new edges") {
  Scratch scratch;
  const auto graph_path = scratch.write("g.tsv", "a\tb\t1.0\nc\td\t1.0\n");
  const auto emb_path = scratch.write("e.tsv",
                                      "a\t1.0,0.0\n"
                                      "c\t0.9,0.1\n"
                                      "d\t0.0,1.0\n");
  const RunResult run = scratch.run("augment --graph " + graph_path.string() +
                                    " --embeddings " + emb_path.string() + " --output " +
                                    scratch.path("aug.tsv").string() + " --rng-seed 3");
  CHECK(run.exit_code == 0);
  const Graph aug = load_graph(scratch.path("aug.tsv").string());
  const auto a = aug.find_node("a");
  const auto c = aug.find_node("c");
  REQUIRE(a);
  REQUIRE(c);
  CHECK(aug.edge_weight(*a, *c) > 0.6);  // cosine(a, c) ~ 0.994
  CHECK(run.err.find("no embedding for node 'b'") != std::string::npos);
}

TEST_CASE("--help documents the defaults the tool is calibrated to") {
  Scratch scratch;
  const RunResult prop = scratch.run("propagate --help");
  CHECK(prop.exit_code == 0);
  CHECK(prop.out.find("--mu1") != std::string::npos);
  CHECK(prop.out.find("--iterations") != std::string::npos);
  for (const char* needle : {"1", "0.01", "10", "0.001", "20", "3"})
    CHECK(prop.out.find(needle) != std::string::npos);

  const RunResult aug = scratch.run("augment --help");
  CHECK(aug.exit_code == 0);
  CHECK(aug.out.find("0.6") != std::string::npos);   // theta-sim default
  CHECK(aug.out.find("12") != std::string::npos);    // lsh-tables default
  CHECK(aug.out.find("10") != std::string::npos);    // lsh-width default
}

TEST_CASE("config file values apply with flag precedence") {
  Scratch scratch;
  const auto graph_path = scratch.write("g.tsv", kTinyGraph);
  const auto seeds_path = scratch.write("s.tsv", kTinySeeds);
  scratch.write("run.cfg",
                "method=streaming\n"
                "iterations=4\n"
                "k=1\n");
  const std::string base = "propagate --graph " + graph_path.string() + " --seeds " +
                           seeds_path.string() + " --config " + scratch.path("run.cfg").string();
  const RunResult from_config =
      scratch.run(base + " --output " + scratch.path("c1.tsv").string());
  CHECK(from_config.exit_code == 0);

  // flag overrides the config file
  const RunResult flag_wins =
      scratch.run(base + " --k 2 --output " + scratch.path("c2.tsv").string());
  CHECK(flag_wins.exit_code == 0);
  CHECK(slurp(scratch.path("c1.tsv")) != slurp(scratch.path("c2.tsv")));
}
