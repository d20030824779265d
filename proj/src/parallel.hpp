#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace k3lat::detail {

// Worker count: K3LAT_THREADS if set (>= 1), otherwise the hardware concurrency.
inline std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("K3LAT_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) n = static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  if (n == 0) n = 1;
  return std::max<std::size_t>(1, std::min(n, jobs));
}

// Runs f(i) for i in [0, n). The first exception thrown by a worker is rethrown.
template <class F>
void parallel_for(std::size_t n, F f) {
  std::size_t workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; !failed && (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace k3lat::detail
