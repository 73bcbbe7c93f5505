#include "labelprop/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "labelprop/count_min.hpp"
#include "labelprop/exact.hpp"
#include "labelprop/freq_thresh.hpp"
#include "labelprop/streaming.hpp"

namespace labelprop {

namespace {

std::string format_cell(const std::optional<double>& value) {
  if (!value) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *value);
  return buf;
}

std::string format_secs(double secs) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", secs);
  return buf;
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  for (const auto& v : values) {
    if (!v) return std::nullopt;
    sum += *v;
  }
  return values.empty() ? std::optional<double>{} : sum / static_cast<double>(values.size());
}

std::vector<std::string> report_header(std::span<const std::size_t> ks) {
  std::vector<std::string> header{"method", "mrr"};
  for (std::size_t k : ks) header.push_back("p@" + std::to_string(k));
  header.push_back("secs");
  header.push_back("entries");
  return header;
}

std::vector<std::string> report_row(const ProtocolReport& report) {
  std::vector<std::string> row{method_name(report.method), format_cell(report.mean.mrr)};
  for (const auto& p : report.mean.p_at_k) row.push_back(format_cell(p));
  row.push_back(format_secs(report.mean.secs));
  row.push_back(std::to_string(report.mean.entries));
  return row;
}

}  // namespace

std::optional<double> mrr(std::span<const std::vector<LabelIndex>> predictions,
                          std::span<const std::vector<LabelIndex>> gold,
                          std::span<const NodeIndex> test_set, std::size_t label_count,
                          std::size_t list_limit) {
  if (test_set.empty()) throw std::invalid_argument("empty test set");
  // Truncated lists cannot rank every label, so the metric is unavailable.
  if (list_limit < label_count) return std::nullopt;
  double sum = 0.0;
  for (NodeIndex v : test_set) {
    if (gold[v].empty()) throw std::invalid_argument("test node without gold labels");
    const auto& ranked = predictions[v];
    double contribution = 0.0;  // gold absent from the list counts as 0
    for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
      if (std::find(gold[v].begin(), gold[v].end(), ranked[rank]) != gold[v].end()) {
        contribution = 1.0 / static_cast<double>(rank + 1);
        break;
      }
    }
    sum += contribution;
  }
  return sum / static_cast<double>(test_set.size());
}

std::optional<double> precision_at_k(std::span<const std::vector<LabelIndex>> predictions,
                                     std::span<const std::vector<LabelIndex>> gold,
                                     std::span<const NodeIndex> test_set, std::size_t K,
                                     std::size_t list_limit) {
  if (test_set.empty()) throw std::invalid_argument("empty test set");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (K > list_limit) return std::nullopt;
  std::size_t hits = 0;
  for (NodeIndex v : test_set) {
    if (gold[v].empty()) throw std::invalid_argument("test node without gold labels");
    const auto& ranked = predictions[v];
    const std::size_t top = std::min(K, ranked.size());
    for (std::size_t rank = 0; rank < top; ++rank) {
      if (std::find(gold[v].begin(), gold[v].end(), ranked[rank]) != gold[v].end()) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(test_set.size());
}

ProtocolReport run_protocol(const Graph& graph, const SeedLabels& gold, const Hyperparams& params,
                            const EvalConfig& config, std::ostream* log) {
  if (config.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (config.seeds_per_label < 1) throw std::invalid_argument("seeds-per-label must be >= 1");
  const std::size_t m = gold.label_count();

  Hyperparams run_params = params;
  run_params.label_count = m;
  run_params.validate();
  const std::size_t list_limit = params.method == Method::kExact ? m : std::min(params.k, m);

  // Gold label sets and the per-label node pools used for seed sampling.
  std::vector<std::vector<LabelIndex>> gold_sets(graph.node_count());
  std::vector<std::vector<NodeIndex>> by_label(m);
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    for (const auto& e : gold.entries(v)) {
      gold_sets[v].push_back(e.label);
      by_label[e.label].push_back(v);
    }
  }

  ProtocolReport report;
  report.method = params.method;
  report.ks = config.ks;
  report.list_limit = list_limit;

  for (std::size_t round = 0; round < config.rounds; ++round) {
    // Seed sample: seeds_per_label per label, uniform without replacement.
    std::mt19937_64 rng(mix_seed(config.rng_seed, round));
    std::unordered_set<NodeIndex> seed_set;
    for (LabelIndex l = 0; l < m; ++l) {
      auto pool = by_label[l];
      if (pool.size() <= config.seeds_per_label) {
        if (pool.size() < config.seeds_per_label && log)
          *log << "warning: label '" << gold.label_id(l) << "' has only " << pool.size()
               << " gold nodes, using all of them as seeds\n";
        seed_set.insert(pool.begin(), pool.end());
        continue;
      }
      std::shuffle(pool.begin(), pool.end(), rng);
      seed_set.insert(pool.begin(), pool.begin() + config.seeds_per_label);
    }
    std::vector<NodeIndex> seed_nodes(seed_set.begin(), seed_set.end());
    std::sort(seed_nodes.begin(), seed_nodes.end());
    const SeedLabels round_seeds = gold.restricted_to(seed_nodes);

    // Test set: gold-labeled nodes that are not seeds.
    std::vector<NodeIndex> test_set;
    for (NodeIndex v = 0; v < graph.node_count(); ++v)
      if (!gold_sets[v].empty() && !seed_set.count(v)) test_set.push_back(v);
    if (test_set.empty()) throw std::invalid_argument("no gold-labeled nodes left for testing");
    for (NodeIndex v : test_set)
      if (seed_set.count(v)) throw std::logic_error("seed/test overlap");

    // Method RNG varies per round; the seed sample above does not depend on
    // the method, so all methods see identical rounds.
    Hyperparams round_params = run_params;
    round_params.rng_seed = mix_seed(params.rng_seed, round);

    RoundMetrics metrics;
    metrics.seed_count = seed_nodes.size();
    metrics.test_count = test_set.size();
    std::vector<SparseLabelDist> dists;
    switch (params.method) {
      case Method::kExact: {
        ExactResult res = run_exact(graph, round_seeds, round_params);
        metrics.secs = res.total_secs;
        metrics.entries = graph.node_count() * m;
        dists = exact_to_dists(res);
        break;
      }
      case Method::kStreaming: {
        PropagationRun res = run_streaming(graph, round_seeds, round_params);
        metrics.secs = res.total_secs;
        metrics.entries = res.peak_stored_entries;
        dists = std::move(res.dists);
        break;
      }
      case Method::kFreqThresh: {
        PropagationRun res = run_freq_thresh(graph, round_seeds, round_params);
        metrics.secs = res.total_secs;
        metrics.entries = res.peak_stored_entries;
        dists = std::move(res.dists);
        break;
      }
      case Method::kCmSketch: {
        PropagationRun res = run_cm_sketch(graph, round_seeds, round_params);
        metrics.secs = res.total_secs;
        metrics.entries = res.peak_stored_entries;
        dists = std::move(res.dists);
        break;
      }
    }

    std::vector<std::vector<LabelIndex>> predictions(graph.node_count());
    for (NodeIndex v : test_set) {
      predictions[v].reserve(dists[v].entries.size());
      for (const auto& e : dists[v].entries) predictions[v].push_back(e.label);
    }

    metrics.mrr = mrr(predictions, gold_sets, test_set, m, list_limit);
    for (std::size_t K : config.ks)
      metrics.p_at_k.push_back(precision_at_k(predictions, gold_sets, test_set, K, list_limit));
    report.rounds.push_back(std::move(metrics));
  }

  // Mean over rounds (NA stays NA).
  std::vector<std::optional<double>> mrrs;
  for (const auto& r : report.rounds) mrrs.push_back(r.mrr);
  report.mean.mrr = mean_of(mrrs);
  for (std::size_t i = 0; i < config.ks.size(); ++i) {
    std::vector<std::optional<double>> ps;
    for (const auto& r : report.rounds) ps.push_back(r.p_at_k[i]);
    report.mean.p_at_k.push_back(mean_of(ps));
  }
  double secs = 0.0;
  std::size_t entries = 0;
  for (const auto& r : report.rounds) {
    secs += r.secs;
    entries = std::max(entries, r.entries);
  }
  report.mean.secs = secs / static_cast<double>(report.rounds.size());
  report.mean.entries = entries;
  return report;
}

std::string format_report_table(std::span<const ProtocolReport> reports) {
  if (reports.empty()) return "";
  const auto header = report_header(reports.front().ks);
  std::vector<std::vector<std::string>> rows{header};
  for (const auto& r : reports) rows.push_back(report_row(r));
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string format_report_tsv(std::span<const ProtocolReport> reports) {
  if (reports.empty()) return "";
  std::ostringstream out;
  const auto header = report_header(reports.front().ks);
  for (std::size_t c = 0; c < header.size(); ++c) out << header[c] << (c + 1 < header.size() ? '\t' : '\n');
  for (const auto& r : reports) {
    const auto row = report_row(r);
    for (std::size_t c = 0; c < row.size(); ++c) out << row[c] << (c + 1 < row.size() ? '\t' : '\n');
  }
  return out.str();
}

}  // namespace labelprop
