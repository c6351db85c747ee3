#include "holderlab/parallel.hpp"

#include <atomic>

#include "holderlab/errors.hpp"

namespace holderlab {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int threads) {
  if (threads < 1) throw InvalidInput("thread count must be >= 1");
  g_threads = threads;
}

int thread_count() noexcept { return g_threads; }

}  // namespace holderlab
