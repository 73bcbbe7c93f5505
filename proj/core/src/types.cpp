#include "labelprop/types.hpp"

#include <stdexcept>

namespace labelprop {

Method parse_method(const std::string& name) {
  if (name == "exact") return Method::kExact;
  if (name == "streaming") return Method::kStreaming;
  if (name == "freq-thresh") return Method::kFreqThresh;
  if (name == "cm-sketch") return Method::kCmSketch;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected exact, streaming, freq-thresh or cm-sketch)");
}

const char* method_name(Method method) {
  switch (method) {
    case Method::kExact: return "exact";
    case Method::kStreaming: return "streaming";
    case Method::kFreqThresh: return "freq-thresh";
    case Method::kCmSketch: return "cm-sketch";
  }
  return "?";
}

DeltaMode parse_delta_mode(const std::string& name) {
  if (name == "adaptive") return DeltaMode::kAdaptive;
  if (name == "uniform") return DeltaMode::kUniform;
  throw std::invalid_argument("unknown delta mode '" + name + "' (expected adaptive or uniform)");
}

void Hyperparams::validate() const {
  if (mu1 < 0 || mu2 < 0 || mu3 < 0)
    throw std::invalid_argument("mu1, mu2, mu3 must be non-negative");
  if (mu1 <= 0 && mu3 <= 0)
    throw std::invalid_argument("mu1 > 0 or mu3 > 0 is required (the update denominator "
                                "must stay positive)");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (label_count < 1) throw std::invalid_argument("label count m must be at least 1");
  if (method == Method::kFreqThresh && freq_threshold <= 0)
    throw std::invalid_argument("freq-threshold must be positive");
  if (method == Method::kCmSketch && (cm_width == 0 || cm_depth == 0))
    throw std::invalid_argument("cm-width and cm-depth must be positive");
  if (tol < 0) throw std::invalid_argument("tol must be non-negative");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace labelprop
