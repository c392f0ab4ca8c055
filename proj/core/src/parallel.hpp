#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace patient_pricing::detail {

// Worker count: explicit request, else hardware concurrency, always capped
// by PATIENT_PRICING_THREADS when set to a positive value (0 means auto).
inline int resolve_thread_count(int requested, std::size_t tasks) {
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
  }
  if (const char* env = std::getenv("PATIENT_PRICING_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  n = std::min<std::size_t>(static_cast<std::size_t>(n), tasks);
  return std::max(n, 1);
}

// Runs body(0..tasks-1); each index writes only its own output slot, so the
// result is independent of the schedule. The first exception wins.
template <class F>
void parallel_for(std::size_t tasks, int threads, F&& body) {
  const int workers = resolve_thread_count(threads, tasks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace patient_pricing::detail
