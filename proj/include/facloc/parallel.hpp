#pragma once

#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace facloc {

// Sums in a fixed binary-tree order. The result depends only on the contents
// of xs, never on how many workers produced them, so estimates replay
// bit-for-bit under any --workers setting.
inline double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// Runs fn(i) for i in [0, n). Each invocation must touch only its own output
// slot; chunks are contiguous so false sharing stays rare.
template <class F>
void parallel_for(std::int64_t n, int workers, F&& fn) {
  if (workers <= 1 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int t = static_cast<int>(std::min<std::int64_t>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (int w = 0; w < t; ++w) {
    const std::int64_t lo = n * w / t;
    const std::int64_t hi = n * (w + 1) / t;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace facloc
