#pragma once

#include <cstdint>
#include <random>

#include "pickfam/rational.hpp"

namespace pickfam {

/// Seeded generator with distribution code written out explicitly, so that
/// draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1U;
    return lo + static_cast<long>(engine_() % span);
  }
  /// Uniform in the closed disc of the given radius.
  Complex in_disc(double radius);
  /// Small Gaussian rational p/q + i r/q with |p|,|r| <= numerator_bound.
  GaussRational small_gauss(long numerator_bound, long denominator = 1);

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace pickfam
