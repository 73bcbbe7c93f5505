#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace labelprop {

using NodeIndex = std::uint32_t;
using LabelIndex = std::uint32_t;

// One (label, weight) entry of a node's label distribution.
struct LabelWeight {
  LabelIndex label = 0;
  double weight = 0.0;
};

enum class Method { kExact, kStreaming, kFreqThresh, kCmSketch };

// How the residual mass of a neighbor message is charged while streaming:
// kAdaptive uses the message's own residual, kUniform a fixed 1/m.
enum class DeltaMode { kAdaptive, kUniform };

Method parse_method(const std::string& name);
const char* method_name(Method method);
DeltaMode parse_delta_mode(const std::string& name);

// Propagation hyperparameters. Method-specific knobs are carried here too so
// one struct configures every propagation entry point.
struct Hyperparams {
  double mu1 = 1.0;
  double mu2 = 0.01;
  double mu3 = 0.01;
  std::size_t iterations = 10;
  std::size_t k = 5;
  std::size_t label_count = 0;  // m; set from the seed set before running
  Method method = Method::kExact;
  DeltaMode delta_mode = DeltaMode::kAdaptive;
  double freq_threshold = 0.001;
  std::size_t cm_width = 20;
  std::size_t cm_depth = 3;
  double tol = 0.0;  // > 0 enables early exit on max-abs row change
  std::uint64_t rng_seed = 42;

  double uniform_prior() const { return 1.0 / static_cast<double>(label_count); }

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// Deterministic seed derivation (splitmix64 over seed ^ stream).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace labelprop
