#pragma once

#include <random>

#include "triphase/geometry.hpp"

// Seeded rejection samplers for well-conditioned test triangles. Margins
// keep the sampled parameters away from domain edges and the sampled
// vertex configurations away from degeneracies, so downstream operations
// (angle extraction, decomposition, holonomy) are all defined.

namespace triphase {

struct TriangleSampleOptions {
  double s_margin = 0.12;             // distance from {0, pi/2} for s1_0, s2_0
  double beta_lo = 0.1;               // beta range (ignored when beta_zero)
  double beta_hi = 3.0;
  bool beta_zero = false;             // force beta = 0 (two-level triangles)
  double min_first_overlap = 1e-2;    // lower bound on |<v1|v3>|
  double min_collinearity_gap = 1e-3; // lower bound on 1 - |<v1|v3>|
};

TriangleParams sample_triangle_params(std::mt19937_64& gen,
                                      const TriangleSampleOptions& opt = {});

GeodesicTriangle sample_triangle(std::mt19937_64& gen,
                                 const TriangleSampleOptions& opt = {});

}  // namespace triphase
