#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace seisdiff {

// Worker count: SEISDIFF_THREADS env var if set, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("SEISDIFF_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

// Runs fn(i) for i in [0, n) across up to thread_count() threads with a
// static partition. Callers own determinism: results must be written to
// per-index slots, never accumulated across indices inside fn.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(n, thread_count());
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &fn]() {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace seisdiff
