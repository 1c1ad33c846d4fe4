#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ptvertex {

/// Thread-count override set by the CLI (--threads); 0 means "not set".
inline int& thread_override() {
  static int v = 0;
  return v;
}

/// Worker count: CLI override, then PTVERTEX_THREADS, then hardware.
inline int thread_count() {
  if (thread_override() > 0) return thread_override();
  if (const char* e = std::getenv("PTVERTEX_THREADS")) {
    int v = std::atoi(e);
    if (v > 0) return v;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(h) : 1;
}

/// Run f(i) for i in [0, n) on a pool of workers.  Work items must be
/// independent; callers are responsible for writing results into
/// index-addressed slots so that any later reduction is deterministic.
/// The first exception thrown by a worker is rethrown here.
template <class F>
void parallel_for(std::size_t n, F f) {
  int workers = thread_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex errorMutex;
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ptvertex
