#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gsp {

/// SplitMix64 generator. The state is a plain value so streams can be
/// threaded explicitly and reproduced bit-for-bit.
struct SplitMix64 {
  std::uint64_t state = 0;

  constexpr std::uint64_t next() noexcept {
    state += 0x9E3779B97F4B9B15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal sample by Box-Muller (cosine branch). u1 is redrawn
  /// while below 2^-53 so the logarithm stays finite.
  double gaussian() noexcept {
    double u1 = uniform();
    while (u1 < 0x1.0p-53) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
};

}  // namespace gsp
