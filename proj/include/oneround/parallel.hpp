#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace oneround {

// Worker count: min(hardware, ONEROUND_THREADS if set, requested if > 0).
inline int worker_count(int requested = 0) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("ONEROUND_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  if (requested > 0) n = std::min(n, requested);
  return std::max(n, 1);
}

// Splits [0, count) into contiguous chunks, one per worker.  fn(worker, lo, hi).
// Results must be merged by the caller from per-worker state so the outcome
// is independent of scheduling.
inline void parallel_chunks(long long count, int workers,
                            const std::function<void(int, long long, long long)>& fn) {
  workers = static_cast<int>(
      std::max<long long>(1, std::min<long long>(workers, count > 0 ? count : 1)));
  if (workers == 1) {
    fn(0, 0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const long long chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long long lo = static_cast<long long>(w) * chunk;
    const long long hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, w, lo, hi);
  }
  for (auto& t : pool) t.join();
}

}  // namespace oneround
