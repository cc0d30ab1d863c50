#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fusionq {

// Worker count used by parallel_for when none is given; 0 means hardware concurrency.
inline std::atomic<int>& default_thread_count() {
  static std::atomic<int> count{0};
  return count;
}

inline int resolve_threads(int requested) {
  if (requested <= 0) requested = default_thread_count().load();
  if (requested <= 0) requested = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return requested;
}

// Runs fn(i) for i in [0, n). The first exception thrown by any task is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, int threads = 0) {
  const int workers = static_cast<int>(std::min<std::size_t>(resolve_threads(threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fusionq
