#pragma once

#include <cmath>
#include <cstdint>

// Counter-based generator for synthetic fixtures. Every draw is a pure
// function of (seed, counter), so fixtures are reproducible from the
// documented recipe alone, independent of platform or call order.
namespace besr::rng {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// uniform in [0, 1) with 53-bit resolution
inline double u01(std::uint64_t seed, std::uint64_t ctr) {
  const std::uint64_t w = splitmix64(((seed << 1) | 1ull) ^ splitmix64(ctr));
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

// standard normal via Box-Muller; draw i consumes counters 2i and 2i+1
inline double gauss(std::uint64_t seed, std::uint64_t i) {
  double u1 = u01(seed, 2 * i);
  if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
  const double u2 = u01(seed, 2 * i + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

} // namespace besr::rng
