#pragma once

#include <cmath>
#include <cstdint>

namespace teso {

// Deterministic splittable random stream.
//
// Every stream is identified by a 64-bit key; `child(i)` derives a new stream
// whose key depends only on (parent key, i). Replications, trials and macro
// runs each draw from their own child stream, so results do not depend on
// execution order or thread schedule. The core sequence is SplitMix64.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : key_(hash_mix(seed)), state_(key_) {}

  // Independent substream addressed by (this stream's key, index).
  [[nodiscard]] RngStream child(std::uint64_t index) const {
    return RngStream(from_key_tag{}, hash_mix(key_ ^ hash_mix(index)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Box-Muller, two uniforms per call; no cached spare so the draw count per
  // call is fixed.
  double normal(double mean, double stddev) {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
  }

  double exponential(double rate) {
    // 1 - uniform01() is in (0, 1], so the log is finite.
    return -std::log1p(-uniform01()) / rate;
  }

  // Unbiased integer in [0, n); Lemire's multiply-shift rejection.
  std::uint64_t uniform_index(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  [[nodiscard]] std::uint64_t key() const { return key_; }

  // UniformRandomBitGenerator interface.
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }
  result_type operator()() { return next_u64(); }

 private:
  struct from_key_tag {};
  RngStream(from_key_tag, std::uint64_t key) : key_(key), state_(key) {}

  // SplitMix64 finalizer with a pre-add so that hash_mix(0) != 0.
  static std::uint64_t hash_mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t state_;
};

// Seed for macro-replication `index` of a suite rooted at `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return RngStream(base).child(index).key();
}

}  // namespace teso
