#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

namespace rle {

// Runs fn(lo, hi) over contiguous chunks of [0, n). With workers <= 1 the
// call is inlined on the current thread, so single-worker runs never touch
// std::thread. Chunk boundaries depend only on (n, workers), which keeps
// results of chunk-independent computations stable for a fixed worker count.
template <typename Fn>
inline void parallel_chunks(std::size_t n, int workers, Fn&& fn) {
  if (n == 0) return;
  const std::size_t w =
      workers <= 1 ? 1 : std::min(static_cast<std::size_t>(workers), n);
  if (w == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t lo = n * t / w;
    const std::size_t hi = n * (t + 1) / w;
    threads.emplace_back([lo, hi, &fn] { fn(lo, hi); });
  }
  for (auto& th : threads) th.join();
}

}  // namespace rle
