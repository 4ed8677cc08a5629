#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ramstap/types.hpp"

namespace ramstap {

/// Seeded random stream for snapshot simulation.
///
/// The generator is std::mt19937_64, whose output sequence is pinned by the
/// C++ standard, and Gaussian variates come from an explicit Box-Muller
/// transform, so a (seed -> draws) mapping is reproducible and documented
/// rather than left to the standard library's unspecified distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in (0, 1]; uses the top 53 bits of one engine output.
  Scalar uniform01() {
    const std::uint64_t bits = engine_() >> 11;
    return static_cast<Scalar>(bits + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (consumes two uniforms, cosine branch).
  Scalar gaussian() {
    const Scalar u1 = uniform01();
    const Scalar u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
  /// One Box-Muller pair feeds the real and imaginary parts.
  Complex complex_gaussian(Scalar variance) {
    if (variance <= 0.0) return Complex(0.0, 0.0);
    const Scalar u1 = uniform01();
    const Scalar u2 = uniform01();
    const Scalar radius = std::sqrt(-std::log(u1) * variance);
    return Complex(radius * std::cos(2.0 * kPi * u2),
                   radius * std::sin(2.0 * kPi * u2));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ramstap
