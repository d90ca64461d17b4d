#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace orbitkit {

/// State of a deterministic sample stream. The pair (seed, counter) fully
/// determines the stream; distinct counters give statistically independent
/// streams, which is how parallel estimation stays reproducible regardless
/// of thread scheduling.
struct SamplerState {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}
}  // namespace detail

class RandomStream {
 public:
  explicit RandomStream(SamplerState s)
      : engine_(detail::splitmix64(s.seed) ^
                detail::splitmix64(detail::splitmix64(s.counter) + 0x9E3779B97F4A7C15ULL)) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t index(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  double normal() { return normal_(engine_); }

  /// Independent N(0,1) real and imaginary parts.
  std::complex<double> complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Worker threads used by the estimators; reads ORBITKIT_THREADS once per
/// call, defaults to 1. Results never depend on this value: per-block
/// partials are reduced in block order.
inline int env_thread_count() {
  const char* s = std::getenv("ORBITKIT_THREADS");
  if (!s) return 1;
  long v = std::strtol(s, nullptr, 10);
  if (v < 1) return 1;
  if (v > 256) return 256;
  return static_cast<int>(v);
}

constexpr std::uint64_t kSampleBlock = 4096;

/// Runs fn once per block of at most kSampleBlock samples and returns the
/// per-block partial results in block order. Block b draws from the stream
/// (seed, counter + b), so the partition into blocks, not the thread count,
/// determines every sample.
template <class Partial, class BlockFn>
std::vector<Partial> run_blocks(SamplerState st, std::uint64_t samples, BlockFn&& fn) {
  const std::uint64_t nblocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<Partial> partials(nblocks);
  const int threads = env_thread_count();
  if (threads <= 1 || nblocks <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) {
      RandomStream rs(SamplerState{st.seed, st.counter + b});
      const std::uint64_t count =
          (b + 1 == nblocks) ? samples - b * kSampleBlock : kSampleBlock;
      partials[b] = fn(rs, count);
    }
    return partials;
  }
  std::vector<std::thread> pool;
  std::atomic<std::uint64_t> next{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::uint64_t b = next.fetch_add(1);
        if (b >= nblocks) return;
        RandomStream rs(SamplerState{st.seed, st.counter + b});
        const std::uint64_t count =
            (b + 1 == nblocks) ? samples - b * kSampleBlock : kSampleBlock;
        partials[b] = fn(rs, count);
      }
    });
  }
  for (auto& th : pool) th.join();
  return partials;
}

}  // namespace orbitkit
