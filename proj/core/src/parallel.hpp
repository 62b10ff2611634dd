#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fiberscope::detail {

// Runs fn(block) for block in [0, blocks) on up to `workers` threads. Blocks are
// handed out in increasing order; fn returning false stops further hand-outs.
template <typename F>
void for_each_block(std::uint64_t blocks, unsigned workers, F&& fn) {
  workers = std::max(1U, workers);
  if (workers == 1 || blocks <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      if (!fn(b)) return;
    }
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    try {
      while (!stop.load(std::memory_order_relaxed)) {
        const std::uint64_t b = next.fetch_add(1);
        if (b >= blocks) return;
        if (!fn(b)) stop = true;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      stop = true;
    }
  };
  std::vector<std::thread> threads;
  const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
  for (unsigned w = 0; w < count; ++w) threads.emplace_back(run);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fiberscope::detail
