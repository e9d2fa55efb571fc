#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace facloc {

// Seedable random stream with deterministic substream derivation.
// Every consumer takes a stream by reference; nothing reads global entropy.
// Substreams are derived by hashing (base seed, task index) so that per-task
// results do not depend on how work is scheduled across workers.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed)
      : base_seed_(seed), engine_(splitmix64(seed ^ 0x9e3779b97f4a7c15ULL)) {}

  // Independent stream for task `index` under the same master seed.
  RandomStream substream(std::uint64_t index) const {
    return RandomStream(splitmix64(base_seed_ + 0x632be59bd9b4e019ULL * (index + 1)));
  }

  std::uint64_t seed() const { return base_seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0, n).
  std::int64_t uniform_index(std::int64_t n) {
    // rejection sampling keeps the distribution exact for any n
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % un);
  }

  // Standard normal via Box-Muller; avoids std::normal_distribution, whose
  // output is implementation defined and would break replay across platforms.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t base_seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace facloc
