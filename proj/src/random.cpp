#include "pickfam/random.hpp"

#include <cmath>
#include <numbers>

namespace pickfam {

Complex Rng::in_disc(double radius) {
  const double r = radius * std::sqrt(uniform());
  const double theta = 2.0 * std::numbers::pi * uniform();
  return std::polar(r, theta);
}

GaussRational Rng::small_gauss(long numerator_bound, long denominator) {
  Rational re(integer(-numerator_bound, numerator_bound), denominator);
  Rational im(integer(-numerator_bound, numerator_bound), denominator);
  return {re, im};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1U);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

}  // namespace pickfam
