#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace lsed {

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so mode phases and ensemble members can be produced in any order
// or in parallel and still be bit-identical.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return splitmix64(splitmix64(seed ^ 0xA0761D6478BD642Full) ^
                    splitmix64(stream * 0xE7037ED1A0B428DBull + counter));
}

/// Uniform double in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return static_cast<double>(mix(seed, stream, counter) >> 11) * 0x1.0p-53;
}

/// Uniform phase in [-pi, pi).
inline double phase(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return -std::numbers::pi + 2.0 * std::numbers::pi * uniform01(seed, stream, counter);
}

/// Rayleigh factor with unit mean square, r^2 ~ Exp(1).
inline double rayleigh_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  double u = uniform01(seed, stream, counter);
  if (u >= 1.0) u = std::nextafter(1.0, 0.0);
  return std::sqrt(-std::log1p(-u));
}

/// Standard normal via Box-Muller on two counter slots.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  double u1 = uniform01(seed, stream, 2 * counter);
  double u2 = uniform01(seed, stream, 2 * counter + 1);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rng
}  // namespace lsed
