#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hermcubic {

/// Resource limits shared by every enumeration path.
struct RunLimits {
  static constexpr std::uint64_t kDefaultBudget = 300'000'000;

  std::uint64_t budget = kDefaultBudget;  // max point evaluations per call
  int workers = 0;                        // 0 = hardware concurrency

  int resolved_workers() const {
    if (workers > 0) return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }
};

/// Splits [0, total) into contiguous chunks, one per worker, and runs
/// fn(worker, begin, end) on each. Chunk boundaries depend only on
/// (total, workers), so per-worker results merge deterministically.
template <class Fn>
void parallel_ranges(std::uint64_t total, int workers, Fn&& fn) {
  workers = std::max(1, workers);
  if (total < static_cast<std::uint64_t>(workers)) workers = std::max<int>(1, static_cast<int>(total));
  if (workers == 1) {
    fn(0, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(total, chunk * w);
    const std::uint64_t end = std::min(total, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hermcubic
