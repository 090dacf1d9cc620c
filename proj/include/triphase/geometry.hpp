#pragma once

#include <array>

#include "triphase/linalg.hpp"

// Geodesic triangles of three-channel rays and their geometric phase.
//
// A triangle is fixed by four real parameters (s1_0, s2_0, alpha, beta).
// Its vertices are
//   v1 = (1, 0, 0)
//   v2 = (cos s1_0, sin s1_0, 0)
//   v3 = (cos s1_0 cos s2_0 - e^{i alpha} sin s1_0 sin s2_0 cos beta,
//         sin s1_0 cos s2_0 + e^{i alpha} cos s1_0 sin s2_0 cos beta,
//         sin beta sin s2_0)
// so that <v2|v1> = cos s1_0 and <v3|v2> = cos s2_0 are real and positive.
// The third vertex is equivalently written with four angles,
//   v3 = (e^{i xi} cos eta, e^{i(xi+chi)} sin eta cos tau, sin eta sin tau),
// and the geometric phase of the closed loop v1 -> v2 -> v3 -> v1 along
// geodesics equals xi = arg(first component of v3).

namespace triphase {

struct TriangleParams {
  double s1_0 = 0.0;   // radians, (0, pi/2)
  double s2_0 = 0.0;   // radians, (0, pi/2)
  double alpha = 0.0;  // radians, [0, 2*pi)
  double beta = 0.0;   // radians, [0, pi]
};

// Throws InvalidParams when a field is non-finite or out of range.
void validate_ranges(const TriangleParams& p);

struct Psi3Angles {
  double xi = 0.0;   // (-pi, pi]
  double eta = 0.0;  // (0, pi/2]
  double tau = 0.0;  // [0, pi/2]
  double chi = 0.0;  // (-pi, pi], 0 by convention when cos(tau) = 0
};

struct GeodesicTriangle {
  StateVector v1;
  StateVector v2;
  StateVector v3;
  TriangleParams params;
  Psi3Angles angles;
  double s3_0 = 0.0;  // arc length of the closing side, equals angles.eta
};

// Wraps an angle into (-pi, pi].
double canonical_angle(double x);

// Distance |a - b| on the circle, in [0, pi].
double phase_distance(double a, double b);

// Builds the vertex triple and the extracted angles for valid parameters.
// Throws DegenerateTriangle when v3 is collinear with v1 or v2, and
// UndefinedDecomposition when the angle extraction is singular.
GeodesicTriangle triangle_vertices(const TriangleParams& p);

// Reads (xi, eta, tau, chi) off a vertex whose third component is real and
// nonnegative. Requires |first component| > phase_defined and eta >= 1e-9;
// chi is set to 0 when the second component vanishes (cos tau = 0).
Psi3Angles extract_angles(const StateVector& v3);

// Point at arc length s on the geodesic from a toward b. The endpoint
// overlap inner(b, a) must be real (|Im| < 1e-12) and inside
// (phase_defined, 1 - phase_defined); s must lie in [0, arccos<b|a>].
StateVector geodesic_point(const StateVector& a, const StateVector& b,
                           double s);

// arg(cos s1_0 cos s2_0 - e^{i alpha} sin s1_0 sin s2_0 cos beta).
// Throws UndefinedPhase when the argument's modulus is below
// phase_defined (v3 orthogonal to v1) and DegenerateTriangle when the
// modulus is within collinearity_gap of 1.
double geometric_phase_closed_form(const TriangleParams& p);

// Independent route: minus the argument of the three-vertex overlap
// product <v1|v2><v2|v3><v3|v1>. Gauge invariant.
double bargmann_phase(const GeodesicTriangle& t);

// Independent route: Pancharatnam product over a discrete loop that
// samples each side at n_steps half-offset arc positions (the loop starts
// and closes on the exact vector v1; the closing side uses a re-gauged
// representative of v1 so its endpoint overlap is real and positive).
// Second-order accurate: the error falls as 1/n_steps^2, driven by the
// two corner cuts at v2 and v3.
double holonomy_phase_discrete(const GeodesicTriangle& t, int n_steps);

// Two-level (channels 1 and 2) reduction helpers, used when beta = 0 and
// every vertex has a vanishing third component. bloch_vector maps the
// spinor (a, b) to the unit sphere; signed_solid_angle combines the
// spherical excess (l'Huilier) with the orientation sign of the vertex
// triple. For such triangles the geometric phase equals minus half the
// signed solid angle.
std::array<double, 3> bloch_vector(Complex a, Complex b);
double signed_solid_angle(const std::array<double, 3>& n1,
                          const std::array<double, 3>& n2,
                          const std::array<double, 3>& n3);

}  // namespace triphase
