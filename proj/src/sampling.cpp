#include "triphase/sampling.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "triphase/errors.hpp"
#include "triphase/rng.hpp"

namespace triphase {

TriangleParams sample_triangle_params(std::mt19937_64& gen,
                                      const TriangleSampleOptions& opt) {
  constexpr double kPi = std::numbers::pi;
  constexpr int kMaxAttempts = 100000;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    TriangleParams p;
    p.s1_0 = uniform_in(gen, opt.s_margin, kPi / 2.0 - opt.s_margin);
    p.s2_0 = uniform_in(gen, opt.s_margin, kPi / 2.0 - opt.s_margin);
    p.alpha = uniform_in(gen, 0.0, 2.0 * kPi);
    p.beta = opt.beta_zero ? 0.0 : uniform_in(gen, opt.beta_lo, opt.beta_hi);

    // First component of v3; its modulus controls both the phase
    // definedness (away from 0) and the v1-collinearity gap (away from 1).
    const Complex z = std::cos(p.s1_0) * std::cos(p.s2_0) -
                      std::polar(1.0, p.alpha) * std::sin(p.s1_0) *
                          std::sin(p.s2_0) * std::cos(p.beta);
    const double mod = std::abs(z);
    if (mod < opt.min_first_overlap) continue;
    if (1.0 - mod < opt.min_collinearity_gap) continue;
    return p;
  }
  throw ConsistencyError("sample_triangle_params: rejection budget exhausted");
}

GeodesicTriangle sample_triangle(std::mt19937_64& gen,
                                 const TriangleSampleOptions& opt) {
  return triangle_vertices(sample_triangle_params(gen, opt));
}

}  // namespace triphase
