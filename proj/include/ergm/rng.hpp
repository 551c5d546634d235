#pragma once

#include <cstdint>

namespace ergm {

// Counter-based stream: output t is a strong 64-bit hash of (key, t).
// Streams are split by deriving fresh keys from (master seed, stream id),
// so replicas are independent and replayable regardless of thread schedule.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  explicit CounterRng(std::uint64_t key = 0) : key_(key) {}

  static CounterRng stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return CounterRng(derive(master_seed, stream_id));
  }

  // Child stream keyed off this generator's identity, not its position.
  CounterRng split(std::uint64_t stream_id) const { return CounterRng(derive(key_, stream_id)); }

  result_type operator()() { return mix(key_ + (counter_++) * kGamma); }

  // Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Unbiased integer in [0, bound); Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t t = -bound % bound;
      while (lo < t) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t derive(std::uint64_t a, std::uint64_t b) {
    return mix(mix(a + kGamma) ^ mix(b + 0x632BE59BD9B4E019ULL));
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ergm
