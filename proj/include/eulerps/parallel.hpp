#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace eulerps {

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// handled by exactly one thread, so write-disjoint bodies give results that do
/// not depend on the worker count.
template <typename Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  }
}

}  // namespace eulerps
