#ifndef BALLSPEC_PARALLEL_HPP
#define BALLSPEC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ballspec {

/// Worker count: BALLSPEC_THREADS if set to a positive integer, otherwise
/// the hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("BALLSPEC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline thread_local bool inside_parallel_region = false;

/// Calls body(i) for i in [0, n) on up to thread_count() threads.  Nested
/// calls run serially.  The first exception thrown by any call is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers =
      inside_parallel_region ? 1 : std::min<std::size_t>(n, thread_count());
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mtx;
  auto run = [&] {
    inside_parallel_region = true;
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mtx);
        if (!err) err = std::current_exception();
      }
    }
    inside_parallel_region = false;
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ballspec

#endif  // BALLSPEC_PARALLEL_HPP
