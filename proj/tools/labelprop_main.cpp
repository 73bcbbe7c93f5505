// labelprop: graph semi-supervised label propagation toolkit.
//
// Subcommands: propagate, augment, evaluate, gen-synthetic, partition-stats.
// Data goes to files or stdout, logs to stderr. Exit codes: 0 success,
// 1 runtime error, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "labelprop/bsp.hpp"
#include "labelprop/count_min.hpp"
#include "labelprop/eval.hpp"
#include "labelprop/exact.hpp"
#include "labelprop/freq_thresh.hpp"
#include "labelprop/io.hpp"
#include "labelprop/lsh.hpp"
#include "labelprop/streaming.hpp"
#include "labelprop/synthetic.hpp"

namespace {

using namespace labelprop;

// Expands `--config FILE` (key=value lines, # comments) into ordinary
// `--key value` arguments. Keys already present on the command line are
// skipped, which gives the precedence flag > config file > default. Unknown
// keys surface as unknown options through the regular parser.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      break;
    }
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw CLI::FileError::Missing(config_path);
  auto has_flag = [&args](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::FileError(config_path + ":" + std::to_string(lineno) +
                           ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty()) {
      throw CLI::FileError(config_path + ":" + std::to_string(lineno) + ": empty key");
    }
    const std::string flag = "--" + key;
    if (has_flag(flag)) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

struct CommonFlags {
  std::string method = "exact";
  std::string delta_mode = "adaptive";
  Hyperparams params;
  std::size_t partitions = 1;
  unsigned workers = 1;
};

void add_propagation_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--method", flags.method, "Propagation method")
      ->check(CLI::IsMember({"exact", "streaming", "freq-thresh", "cm-sketch"}))
      ->capture_default_str();
  cmd->add_option("--iterations", flags.params.iterations, "Propagation iterations")
      ->capture_default_str();
  cmd->add_option("--k", flags.params.k, "Labels stored per node (approximate methods)")
      ->capture_default_str();
  cmd->add_option("--mu1", flags.params.mu1, "Seed term weight")->capture_default_str();
  cmd->add_option("--mu2", flags.params.mu2, "Neighbor term weight")->capture_default_str();
  cmd->add_option("--mu3", flags.params.mu3, "Uniform prior term weight")->capture_default_str();
  cmd->add_option("--tol", flags.params.tol,
                  "Early exit when the max-abs row change drops below this (0 = off, exact only)")
      ->capture_default_str();
  cmd->add_option("--delta-mode", flags.delta_mode,
                  "Residual charged for labels absent from a message (streaming)")
      ->check(CLI::IsMember({"adaptive", "uniform"}))
      ->capture_default_str();
  cmd->add_option("--freq-threshold", flags.params.freq_threshold,
                  "Score threshold of the freq-thresh method")
      ->capture_default_str();
  cmd->add_option("--cm-width", flags.params.cm_width, "Count-min sketch width")
      ->capture_default_str();
  cmd->add_option("--cm-depth", flags.params.cm_depth, "Count-min sketch depth")
      ->capture_default_str();
  cmd->add_option("--partitions", flags.partitions, "Partition count of the BSP engine")
      ->capture_default_str();
  cmd->add_option("--workers", flags.workers, "Worker threads (1 = single-threaded reference)")
      ->capture_default_str();
  cmd->add_option("--rng-seed", flags.params.rng_seed, "Random seed")->capture_default_str();
}

Hyperparams resolve_params(CommonFlags& flags, const SeedLabels& seeds) {
  flags.params.method = parse_method(flags.method);
  flags.params.delta_mode = parse_delta_mode(flags.delta_mode);
  flags.params.label_count = seeds.label_count();
  flags.params.validate();
  return flags.params;
}

void write_dists(const std::string& path, const Graph& graph, const SeedLabels& seeds,
                 std::span<const SparseLabelDist> dists) {
  if (path == "-") {
    write_output(std::cout, graph, seeds, dists);
  } else {
    write_output(path, graph, seeds, dists);
  }
}

int cmd_propagate(const std::string& graph_path, const std::string& seeds_path,
                  const std::string& output_path, CommonFlags& flags) {
  const Graph graph = load_graph(graph_path);
  const SeedLabels seeds = load_seeds(seeds_path, graph);
  const Hyperparams params = resolve_params(flags, seeds);
  std::cerr << "loaded graph: " << graph.node_count() << " nodes, " << graph.edge_count()
            << " edges, " << seeds.seed_count() << " seeds, m=" << seeds.label_count() << "\n";

  if (params.method == Method::kExact && flags.partitions == 1) {
    const ExactResult result = run_exact(graph, seeds, params);
    char buf[64];
    for (std::size_t i = 0; i < result.objectives.size(); ++i) {
      std::snprintf(buf, sizeof buf, "iteration=%zu objective=%.9g", i, result.objectives[i]);
      std::cerr << buf << '\n';
    }
    std::snprintf(buf, sizeof buf, "total_secs=%.6f", result.total_secs);
    std::cerr << buf << '\n';
    write_dists(output_path, graph, seeds, exact_to_dists(result));
    return 0;
  }

  BspOptions options;
  options.partitions = flags.partitions;
  options.workers = flags.workers;
  options.log = &std::cerr;
  const PropagationRun run = run_bsp(graph, seeds, params, options);
  char buf[64];
  std::snprintf(buf, sizeof buf, "total_secs=%.6f peak_entries=%zu", run.total_secs,
                run.peak_stored_entries);
  std::cerr << buf << '\n';
  write_dists(output_path, graph, seeds, run.dists);
  return 0;
}

int cmd_augment(const std::string& graph_path, const std::string& embeddings_path,
                const std::string& output_path, const LshParams& lsh) {
  const Graph graph = load_graph(graph_path);
  const EmbeddingTable table = load_embeddings(embeddings_path);
  std::cerr << "loaded " << table.vectors.size() << " vectors of dimension " << table.dim << "\n";
  AugmentStats stats;
  const Graph augmented = augment(graph, table, lsh, &stats, &std::cerr);
  std::cerr << "embedded=" << stats.nodes_embedded << " skipped=" << stats.nodes_skipped
            << " candidates=" << stats.candidate_pairs << " edges_added=" << stats.edges_added
            << " edges_raised=" << stats.edges_raised << "\n";
  if (output_path == "-") {
    write_graph(std::cout, augmented);
  } else {
    write_graph(output_path, augmented);
  }
  return 0;
}

int cmd_evaluate(const std::string& graph_path, const std::string& gold_path,
                 const std::vector<std::string>& methods, CommonFlags& flags, EvalConfig config,
                 const std::string& format) {
  const Graph graph = load_graph(graph_path);
  const SeedLabels gold = load_seeds(gold_path, graph);
  std::vector<ProtocolReport> reports;
  for (const auto& name : methods) {
    CommonFlags method_flags = flags;
    method_flags.method = name;
    const Hyperparams params = resolve_params(method_flags, gold);
    std::cerr << "evaluating " << name << " (" << config.rounds << " rounds, "
              << config.seeds_per_label << " seeds/label)\n";
    reports.push_back(run_protocol(graph, gold, params, config, &std::cerr));
  }
  if (format == "tsv") {
    std::cout << format_report_tsv(reports);
  } else {
    std::cout << format_report_table(reports);
  }
  return 0;
}

int cmd_gen_synthetic(const SyntheticSpec& spec, std::size_t seeds_per_cluster,
                      const std::string& out_graph, const std::string& out_gold,
                      const std::string& out_seeds) {
  const SyntheticData data = generate_planted_partition(spec);
  std::cerr << "generated " << data.graph.node_count() << " nodes, " << data.graph.edge_count()
            << " edges, " << data.label_names.size() << " clusters\n";
  write_graph(out_graph, data.graph);

  std::ofstream gold(out_gold);
  if (!gold) throw std::runtime_error("cannot open '" + out_gold + "' for writing");
  for (NodeIndex v = 0; v < data.graph.node_count(); ++v)
    gold << data.graph.node_id(v) << '\t' << data.label_names[data.gold[v]] << "\t1.0\n";

  if (!out_seeds.empty()) {
    if (seeds_per_cluster == 0)
      throw std::runtime_error("--out-seeds requires --seeds-per-cluster > 0");
    const auto seeds = sample_cluster_seeds(data, seeds_per_cluster,
                                            mix_seed(spec.rng_seed, 0x5eedULL));
    std::ofstream out(out_seeds);
    if (!out) throw std::runtime_error("cannot open '" + out_seeds + "' for writing");
    for (NodeIndex v : seeds)
      out << data.graph.node_id(v) << '\t' << data.label_names[data.gold[v]] << "\t1.0\n";
  }
  return 0;
}

int cmd_partition_stats(const std::string& graph_path, std::size_t partitions) {
  const Graph graph = load_graph(graph_path);
  const PartitionSummary summary = partition_stats(graph, partitions);
  std::cout << "partition\tnodes\tcross_edges\n";
  for (std::size_t p = 0; p < partitions; ++p)
    std::cout << p << '\t' << summary.node_counts[p] << '\t' << summary.cross_edge_counts[p]
              << '\n';
  std::cout << "cut_edges\t" << summary.cut_edges << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph semi-supervised label propagation with bounded-memory label stores"};
  app.require_subcommand(1);
  std::string config_path;
  const auto add_config_flag = [&config_path](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "Config file with key=value lines (explicit flags take precedence)");
  };

  // propagate
  auto* propagate = app.add_subcommand("propagate", "Run label propagation and write the result");
  add_config_flag(propagate);
  std::string graph_path, seeds_path, gold_path, embeddings_path;
  std::string output_path = "-";
  CommonFlags flags;
  propagate->add_option("--graph", graph_path, "Edge TSV input")->required();
  propagate->add_option("--seeds", seeds_path, "Seed TSV input")->required();
  propagate->add_option("--output", output_path, "Output TSV ('-' = stdout)")
      ->capture_default_str();
  add_propagation_flags(propagate, flags);

  // augment
  auto* aug = app.add_subcommand("augment", "Add embedding-similarity edges to a graph");
  add_config_flag(aug);
  std::string aug_output = "-";
  LshParams lsh;
  aug->add_option("--graph", graph_path, "Edge TSV input")->required();
  aug->add_option("--embeddings", embeddings_path, "Embedding TSV (token<TAB>v1,v2,...)")
      ->required();
  aug->add_option("--output", aug_output, "Augmented edge TSV ('-' = stdout)")
      ->capture_default_str();
  aug->add_option("--theta-sim", lsh.theta_sim, "Cosine threshold for new edges")
      ->capture_default_str();
  aug->add_option("--lsh-tables", lsh.tables, "Number of hash tables D")->capture_default_str();
  aug->add_option("--lsh-width", lsh.width, "Signature bits per table W")->capture_default_str();
  aug->add_option("--rng-seed", lsh.rng_seed, "Random seed")->capture_default_str();

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Seeded rounds of propagation scored with MRR/P@K");
  add_config_flag(eval);
  std::vector<std::string> methods{"exact"};
  EvalConfig config;
  std::string format = "table";
  eval->add_option("--graph", graph_path, "Edge TSV input")->required();
  eval->add_option("--gold", gold_path, "Gold label TSV input")->required();
  eval->add_option("--methods", methods, "Comma-separated methods to compare")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--seeds-per-label", config.seeds_per_label, "Seeds sampled per label")
      ->capture_default_str();
  eval->add_option("--rounds", config.rounds, "Evaluation rounds")->capture_default_str();
  eval->add_option("--ks", config.ks, "K values for precision@K")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--eval-seed", config.rng_seed, "Seed-sampling RNG seed")
      ->capture_default_str();
  eval->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"table", "tsv"}))
      ->capture_default_str();
  add_propagation_flags(eval, flags);

  // gen-synthetic
  auto* gen = app.add_subcommand("gen-synthetic", "Planted-partition benchmark generator");
  add_config_flag(gen);
  SyntheticSpec spec;
  std::size_t seeds_per_cluster = 0;
  std::string out_graph, out_gold, out_seeds;
  gen->add_option("--clusters", spec.clusters, "Cluster count")->required();
  gen->add_option("--nodes-per-cluster", spec.nodes_per_cluster, "Nodes per cluster")->required();
  gen->add_option("--intra", spec.intra, "Intra-cluster edge probability")
      ->check(CLI::Range(0.0, 1.0))
      ->required();
  gen->add_option("--inter", spec.inter, "Inter-cluster edge probability")
      ->check(CLI::Range(0.0, 1.0))
      ->required();
  gen->add_option("--seeds-per-cluster", seeds_per_cluster, "Seeds sampled per cluster")
      ->capture_default_str();
  gen->add_option("--out-graph", out_graph, "Edge TSV output")->required();
  gen->add_option("--out-gold", out_gold, "Gold label TSV output")->required();
  gen->add_option("--out-seeds", out_seeds, "Seed TSV output (optional)");
  gen->add_option("--rng-seed", spec.rng_seed, "Random seed")->capture_default_str();

  // partition-stats
  auto* pstats = app.add_subcommand("partition-stats", "Partition balance and cut diagnostics");
  std::size_t partitions = 1;
  pstats->add_option("--graph", graph_path, "Edge TSV input")->required();
  pstats->add_option("--partitions", partitions, "Partition count")->required();

  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (propagate->parsed()) return cmd_propagate(graph_path, seeds_path, output_path, flags);
    if (aug->parsed()) return cmd_augment(graph_path, embeddings_path, aug_output, lsh);
    if (eval->parsed())
      return cmd_evaluate(graph_path, gold_path, methods, flags, config, format);
    if (gen->parsed())
      return cmd_gen_synthetic(spec, seeds_per_cluster, out_graph, out_gold, out_seeds);
    if (pstats->parsed()) return cmd_partition_stats(graph_path, partitions);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
