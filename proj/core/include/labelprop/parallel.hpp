#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace labelprop {

// Runs fn(i) for i in [0, n) across up to `workers` threads in contiguous
// chunks. With workers <= 1 everything stays on the calling thread. Callers
// must ensure fn writes only to disjoint slots; results may not depend on
// the worker count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const auto used = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  const std::size_t chunk = (n + used - 1) / used;
  std::vector<std::thread> threads;
  threads.reserve(used);
  for (unsigned t = 0; t < used; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& th : threads) th.join();
}

}  // namespace labelprop
