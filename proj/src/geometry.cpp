#include "triphase/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "triphase/constants.hpp"
#include "triphase/errors.hpp"

namespace triphase {

namespace {

constexpr double kPi = std::numbers::pi;

// Complex amplitude whose argument is the closed-form geometric phase.
Complex third_vertex_first_component(const TriangleParams& p) {
  const Complex ea = std::polar(1.0, p.alpha);
  return std::cos(p.s1_0) * std::cos(p.s2_0) -
         ea * std::sin(p.s1_0) * std::sin(p.s2_0) * std::cos(p.beta);
}

}  // namespace

double canonical_angle(double x) {
  double r = std::remainder(x, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r = kPi;
  return r;
}

double phase_distance(double a, double b) {
  return std::abs(canonical_angle(a - b));
}

void validate_ranges(const TriangleParams& p) {
  if (!std::isfinite(p.s1_0) || !std::isfinite(p.s2_0) ||
      !std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
    throw InvalidParams("TriangleParams: non-finite field");
  }
  if (!(p.s1_0 > 0.0 && p.s1_0 < kPi / 2.0)) {
    throw InvalidParams("TriangleParams: s1_0 must lie in (0, pi/2)");
  }
  if (!(p.s2_0 > 0.0 && p.s2_0 < kPi / 2.0)) {
    throw InvalidParams("TriangleParams: s2_0 must lie in (0, pi/2)");
  }
  if (!(p.alpha >= 0.0 && p.alpha < 2.0 * kPi)) {
    throw InvalidParams("TriangleParams: alpha must lie in [0, 2*pi)");
  }
  if (!(p.beta >= 0.0 && p.beta <= kPi)) {
    throw InvalidParams("TriangleParams: beta must lie in [0, pi]");
  }
}

GeodesicTriangle triangle_vertices(const TriangleParams& p) {
  validate_ranges(p);

  const double c1s = std::cos(p.s1_0), s1s = std::sin(p.s1_0);
  const double c2s = std::cos(p.s2_0), s2s = std::sin(p.s2_0);
  const Complex ea = std::polar(1.0, p.alpha);
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);

  StateVector v1 = StateVector::basis(0);
  StateVector v2(Complex(c1s), Complex(s1s), Complex(0));
  StateVector v3(c1s * c2s - ea * (s1s * s2s * cb),
                 s1s * c2s + ea * (c1s * s2s * cb),  //
                 Complex(sb * s2s));

  if (1.0 - std::abs(inner(v1, v3)) <= tol::collinearity_gap) {
    throw DegenerateTriangle(
        "triangle_vertices: third vertex collinear with first");
  }
  if (1.0 - std::abs(inner(v2, v3)) <= tol::collinearity_gap) {
    throw DegenerateTriangle(
        "triangle_vertices: third vertex collinear with second");
  }
  if (std::abs(inner(v2, v1).imag()) > tol::construction ||
      std::abs(inner(v3, v2).imag()) > tol::construction) {
    throw ConsistencyError("triangle_vertices: side overlap not real");
  }

  const Psi3Angles angles = extract_angles(v3);
  return GeodesicTriangle{v1, v2, v3, p, angles, angles.eta};
}

Psi3Angles extract_angles(const StateVector& v3) {
  const Complex a = v3.c1();
  const Complex b = v3.c2();
  const Complex c = v3.c3();

  if (std::abs(c.imag()) > tol::construction || c.real() < -tol::construction) {
    throw UndefinedDecomposition(
        "extract_angles: third component must be real and nonnegative");
  }

  const double abs_a = std::abs(a);
  const double eta = std::acos(std::min(1.0, abs_a));
  if (eta < 1e-9) {
    throw UndefinedDecomposition(
        "extract_angles: vertex collinear with the first basis ray");
  }
  if (abs_a <= tol::phase_defined) {
    throw UndefinedDecomposition(
        "extract_angles: first component vanishes, xi undefined");
  }

  const double xi = std::arg(a);
  const double abs_b = std::abs(b);
  const double tau = std::atan2(std::max(0.0, c.real()), abs_b);
  const double chi =
      abs_b > tol::phase_defined ? canonical_angle(std::arg(b) - xi) : 0.0;

  Psi3Angles out{xi, eta, tau, chi};

  // Rebuild the vertex from the angles; the representation must close.
  const Complex r1 = std::polar(std::cos(eta), xi);
  const Complex r2 = std::polar(std::sin(eta) * std::cos(tau), xi + chi);
  const Complex r3 = Complex(std::sin(eta) * std::sin(tau));
  const double defect = std::max({std::abs(r1 - a), std::abs(r2 - b),  //
                                  std::abs(r3 - c)});
  if (defect > tol::recomposition) {
    throw ConsistencyError("extract_angles: recomposition defect " +
                           std::to_string(defect));
  }
  return out;
}

StateVector geodesic_point(const StateVector& a, const StateVector& b,
                           double s) {
  const Complex ov = inner(b, a);
  if (std::abs(ov.imag()) >= tol::construction) {
    throw InvalidOverlap(
        "geodesic_point: endpoint overlap has a nonzero phase; re-gauge "
        "the representatives first");
  }
  const double c = ov.real();
  if (c <= tol::phase_defined || c >= 1.0 - tol::phase_defined) {
    throw InvalidOverlap(
        "geodesic_point: endpoint overlap must lie strictly inside (0, 1)");
  }
  const double s_max = std::acos(c);
  if (!(s >= 0.0 && s <= s_max + 1e-12)) {
    throw OutOfRange("geodesic_point: arc length outside [0, arccos<b|a>]");
  }

  const double inv = 1.0 / std::sqrt(1.0 - c * c);
  const double cs = std::cos(s), sn = std::sin(s);
  std::array<Complex, 3> out;
  for (int i = 0; i < 3; ++i) {
    const Complex unit_tangent = (b[i] - a[i] * c) * inv;
    out[static_cast<size_t>(i)] = a[i] * cs + unit_tangent * sn;
  }
  return StateVector(out[0], out[1], out[2]);
}

double geometric_phase_closed_form(const TriangleParams& p) {
  validate_ranges(p);
  const Complex z = third_vertex_first_component(p);
  const double mod = std::abs(z);
  if (mod <= tol::phase_defined) {
    throw UndefinedPhase(
        "geometric_phase_closed_form: vanishing first component, phase "
        "undefined");
  }
  if (1.0 - mod <= tol::collinearity_gap) {
    throw DegenerateTriangle(
        "geometric_phase_closed_form: third vertex collinear with first");
  }
  return std::arg(z);
}

double bargmann_phase(const GeodesicTriangle& t) {
  const Complex d12 = inner(t.v1, t.v2);
  const Complex d23 = inner(t.v2, t.v3);
  const Complex d31 = inner(t.v3, t.v1);
  const Complex prod = d12 * d23 * d31;
  if (std::abs(prod) <= tol::phase_defined) {
    throw UndefinedPhase("bargmann_phase: vanishing overlap product");
  }
  return canonical_angle(-std::arg(prod));
}

double holonomy_phase_discrete(const GeodesicTriangle& t, int n_steps) {
  if (n_steps < 2) {
    throw OutOfRange("holonomy_phase_discrete: need at least 2 steps/side");
  }

  // Representative of ray(v1) with real positive overlap against v3, so
  // the closing side satisfies the geodesic interpolator's precondition.
  const double sigma = std::arg(inner(t.v1, t.v3));
  const StateVector v4 = t.v1.with_phase(sigma);

  std::vector<StateVector> chain;
  chain.reserve(static_cast<size_t>(3 * n_steps) + 1);
  chain.push_back(t.v1);

  // Half-offset sampling: each side contributes n interior points at arc
  // positions (j + 1/2) * s0 / n. The first and last points of a side sit
  // half a step away from the corners, so the polygon cuts the corners at
  // v2 and v3; those two cuts are the (second-order) discretization error.
  auto sample_side = [&chain, n_steps](const StateVector& a,
                                       const StateVector& b) {
    const double s0 = std::acos(inner(b, a).real());
    for (int j = 0; j < n_steps; ++j) {
      const double s = (j + 0.5) * s0 / n_steps;
      chain.push_back(geodesic_point(a, b, s));
    }
  };
  sample_side(t.v1, t.v2);
  sample_side(t.v2, t.v3);
  sample_side(t.v3, v4);

  // Pancharatnam product around the loop, closed onto the exact start
  // vector. Summing step arguments equals arg of the ordered product
  // modulo 2*pi; each step is short, so no branch issues arise.
  double total = 0.0;
  const size_t n = chain.size();
  for (size_t j = 0; j < n; ++j) {
    const StateVector& x = chain[j];
    const StateVector& y = chain[(j + 1) % n];
    total += std::arg(inner(x, y));
  }
  return canonical_angle(-total);
}

std::array<double, 3> bloch_vector(Complex a, Complex b) {
  const Complex cross = std::conj(a) * b;
  std::array<double, 3> n{2.0 * cross.real(), 2.0 * cross.imag(),
                          std::norm(a) - std::norm(b)};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (len < tol::phase_defined) {
    throw UndefinedPhase("bloch_vector: zero-length spinor");
  }
  for (double& x : n) x /= len;
  return n;
}

double signed_solid_angle(const std::array<double, 3>& n1,
                          const std::array<double, 3>& n2,
                          const std::array<double, 3>& n3) {
  auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  auto side = [&dot](const std::array<double, 3>& a,
                     const std::array<double, 3>& b) {
    return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
  };

  // Spherical excess by l'Huilier's theorem.
  const double a = side(n2, n3);
  const double b = side(n3, n1);
  const double c = side(n1, n2);
  const double s = 0.5 * (a + b + c);
  const double prod = std::tan(s / 2.0) * std::tan((s - a) / 2.0) *
                      std::tan((s - b) / 2.0) * std::tan((s - c) / 2.0);
  const double excess = 4.0 * std::atan(std::sqrt(std::max(0.0, prod)));

  const double triple =
      n1[0] * (n2[1] * n3[2] - n2[2] * n3[1]) -
      n1[1] * (n2[0] * n3[2] - n2[2] * n3[0]) +
      n1[2] * (n2[0] * n3[1] - n2[1] * n3[0]);
  return triple >= 0.0 ? excess : -excess;
}

}  // namespace triphase
