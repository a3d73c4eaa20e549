#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace wfe {

// Default worker count: WFE_THREADS env var, else hardware concurrency.
int default_thread_count();

// Runs fn(chunk_index, begin, end) over n_items split into n_chunks contiguous
// ranges. The partition depends only on n_items and n_chunks, never on the
// thread count, so per-item results (and any chunk-indexed reduction done by
// the caller afterwards) are bitwise reproducible at any parallelism level.
template <class F>
void parallel_chunks(std::size_t n_items, std::size_t n_chunks, int threads, F &&fn) {
  if (n_items == 0) return;
  if (n_chunks == 0) n_chunks = 1;
  if (n_chunks > n_items) n_chunks = n_items;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::size_t begin = n_items * c / n_chunks;
      const std::size_t end = n_items * (c + 1) / n_chunks;
      fn(c, begin, end);
    }
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  const int nw = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), n_chunks));
  pool.reserve(static_cast<std::size_t>(nw));
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto &t : pool) t.join();
}

}  // namespace wfe
