#include "teamsel/rng.hpp"

#include <cmath>
#include <numbers>

namespace teamsel::rng {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
  // Modulo with rejection of the biased top range.
  const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

double SplitMix64::next_normal(double mean, double sigma) {
  const double u1 = 1.0 - next_double();  // (0, 1]
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mean + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
}

double SplitMix64::next_exponential(double mean) {
  for (;;) {
    const double u = 1.0 - next_double();  // (0, 1]
    const double x = -mean * std::log(u);
    if (x > 0.0) return x;
  }
}

SplitMix64 derive(std::uint64_t seed, std::string_view tag,
                  std::uint64_t index) {
  return SplitMix64(mix64(mix64(seed ^ fnv1a64(tag)) ^ index));
}

}  // namespace teamsel::rng
