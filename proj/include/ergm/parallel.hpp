#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ergm {

inline int default_workers() {
  if (const char* env = std::getenv("ERGM_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for i in [begin, end) on up to `workers` threads. Results must be
// written to per-index slots by the caller; iteration order is unspecified.
inline void parallel_for(int begin, int end, int workers, const std::function<void(int)>& fn) {
  const int count = end - begin;
  if (count <= 0) return;
  if (workers <= 0) workers = default_workers();
  if (workers > count) workers = count;
  if (workers == 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<int> next{begin};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < end; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ergm
