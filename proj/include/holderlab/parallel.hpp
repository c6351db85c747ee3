#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace holderlab {

/// Worker count used by scans (default 1).
void set_thread_count(int threads);
int thread_count() noexcept;

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// fn(chunk, begin, end). Chunk boundaries depend only on n and the thread
/// count, so chunk-ordered reductions are deterministic.
template <class Fn>
void parallel_chunks(std::size_t n, std::size_t chunks, Fn&& fn) {
  chunks = std::max<std::size_t>(1, std::min(chunks, n == 0 ? 1 : n));
  auto bounds = [&](std::size_t c) { return n * c / chunks; };
  if (chunks == 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(chunks - 1);
  for (std::size_t c = 1; c < chunks; ++c)
    workers.emplace_back([&, c] { fn(c, bounds(c), bounds(c + 1)); });
  fn(std::size_t{0}, bounds(0), bounds(1));
  for (auto& w : workers) w.join();
}

}  // namespace holderlab
