#pragma once

#include <cstdint>
#include <string_view>

// Counter-based 64-bit generator (SplitMix64). A stream is fully determined
// by (seed, tag, index): the initial state is
//
//   state0 = mix64(mix64(seed ^ fnv1a64(tag)) ^ index)
//
// and each output advances the counter by the golden-ratio increment before
// applying the mix64 finalizer. Callers that document their draw order get
// reproducible sub-streams for free. Cross-platform determinism holds for the
// integer outputs; the normal/exponential transforms go through libm, so
// bit-for-bit reproducibility of those is per-build.

namespace teamsel::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform on [0, 1), 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Unbiased integer in [0, bound); bound must be positive.
  std::uint64_t next_below(std::uint64_t bound);

  /// Box-Muller, cosine branch only: consumes exactly two uniforms per draw.
  double next_normal(double mean, double sigma);

  /// Inverse CDF; redraws on an exact zero so every sample is positive.
  double next_exponential(double mean);

 private:
  std::uint64_t state_;
};

/// Stream for (seed, tag, index); see the header comment for the formula.
SplitMix64 derive(std::uint64_t seed, std::string_view tag,
                  std::uint64_t index = 0);

}  // namespace teamsel::rng
