#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace areawalk {

/// SplitMix64 finalizer; used only to expand (seed, stream) into state.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives an independent seed for a named sub-experiment of `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t domain) {
  return mix64(seed ^ mix64(domain + 0x9E3779B97F4A7C15ULL));
}

/// xoshiro256** keyed by (seed, stream index).
///
/// The same (seed, stream) always reproduces the same sequence bit for bit.
/// Estimators give every sample path its own stream index, so results do not
/// depend on how paths are distributed over threads, and paths are common
/// random numbers across parameter values.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::uint64_t x = mix64(seed + 0x9E3779B97F4A7C15ULL) ^ mix64(~stream * 0xD1B54A32D192ED03ULL);
    for (auto& w : s_) {
      x += 0x9E3779B97F4A7C15ULL;
      w = mix64(x);
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }
  /// Standard exponential by inversion, -ln(1 - U).
  double exponential() { return -std::log1p(-uniform()); }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream() const { return stream_; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t s_[4]{};
};

}  // namespace areawalk
