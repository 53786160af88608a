#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace keyvec {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
/// processed exactly once; callers write results into pre-sized slots so
/// the outcome is identical for any worker count.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t thread_count =
      std::min<std::size_t>(n, std::size_t(std::max(workers, 1)));
  if (thread_count <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(thread_count);
  for (std::size_t t = 0; t < thread_count; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += thread_count) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace keyvec
