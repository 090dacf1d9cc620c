#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

// Small deterministic sampling helpers. Distributions from <random> are
// implementation defined, so everything here is built directly on the raw
// mt19937_64 stream; a fixed seed reproduces the same values on every run.

namespace triphase {

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(gen);
}

struct GaussPair {
  double first = 0.0;
  double second = 0.0;
};

// One Box-Muller transform: two independent standard normal draws.
inline GaussPair gaussian_pair(std::mt19937_64& gen) {
  const double u1 = 1.0 - unit_uniform(gen);  // (0, 1], keeps log finite
  const double u2 = unit_uniform(gen);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

}  // namespace triphase
