#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rsym {

inline std::size_t default_jobs() {
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : h;
}

// Calls f(i) for i in [0, n) on up to `jobs` threads. Work is split into
// contiguous blocks, so callers that write results by index get output
// independent of the thread count. The first exception is rethrown.
template <class F>
void parallel_for(std::size_t n, std::size_t jobs, F&& f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  jobs = std::min(jobs, n);
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    std::size_t begin = n * t / jobs, end = n * (t + 1) / jobs;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) {
          {
            std::lock_guard<std::mutex> lock(mu);
            if (err) return;
          }
          f(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace rsym
