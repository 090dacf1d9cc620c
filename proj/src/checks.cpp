#include "triphase/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "triphase/experiment.hpp"
#include "triphase/geometry.hpp"
#include "triphase/linalg.hpp"
#include "triphase/optics.hpp"
#include "triphase/rng.hpp"
#include "triphase/sampling.hpp"

namespace triphase {

namespace {

constexpr double kPi = std::numbers::pi;

double vec_distance(const StateVector& a, const StateVector& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

std::string detail_text(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

// The three side endpoints in traversal order; the closing side ends on
// the phase-matched representative of the first vertex.
struct SideSpec {
  StateVector from;
  StateVector to;
  double arc;
};

std::array<SideSpec, 3> sides_of(const GeodesicTriangle& t) {
  return {SideSpec{t.v1, t.v2, t.params.s1_0},
          SideSpec{t.v2, t.v3, t.params.s2_0},
          SideSpec{t.v3, t.v1.with_phase(t.angles.xi), t.s3_0}};
}

}  // namespace

CheckResult check_closed_form_vs_construction() {
  std::mt19937_64 gen(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const TriangleParams p = sample_triangle_params(gen);
    const GeodesicTriangle t = triangle_vertices(p);
    worst = std::max(
        worst, phase_distance(geometric_phase_closed_form(p), t.angles.xi));
  }
  return CheckResult{
      1, "closed form equals constructed first-component argument",
      worst <= 1e-12,
      detail_text("max deviation %.3g over 1000 triangles", worst)};
}

CheckResult check_phase_oracle_agreement() {
  std::mt19937_64 gen(202);
  double worst_bargmann = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const GeodesicTriangle t = sample_triangle(gen);
    worst_bargmann = std::max(
        worst_bargmann, phase_distance(bargmann_phase(t),
                                       geometric_phase_closed_form(t.params)));
  }

  std::mt19937_64 gen_h(203);
  double worst_holonomy = 0.0;
  for (int i = 0; i < 50; ++i) {
    const GeodesicTriangle t = sample_triangle(gen_h);
    worst_holonomy = std::max(
        worst_holonomy, phase_distance(holonomy_phase_discrete(t, 2000),
                                       geometric_phase_closed_form(t.params)));
  }

  std::mt19937_64 gen_r(204);
  int measurable = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const GeodesicTriangle t = sample_triangle(gen_r);
    const double truth = geometric_phase_closed_form(t.params);
    const double e125 =
        phase_distance(holonomy_phase_discrete(t, 125), truth);
    const double e250 =
        phase_distance(holonomy_phase_discrete(t, 250), truth);
    const double e500 =
        phase_distance(holonomy_phase_discrete(t, 500), truth);
    if (e250 > 1e-12) {
      ++measurable;
      min_ratio = std::min(min_ratio, e125 / e250);
    }
    if (e500 > 1e-12) {
      ++measurable;
      min_ratio = std::min(min_ratio, e250 / e500);
    }
  }

  const bool pass = worst_bargmann <= 1e-12 && worst_holonomy <= 1e-4 &&
                    measurable >= 30 && min_ratio >= 3.0;
  return CheckResult{
      2, "overlap-product and discrete-holonomy oracles agree", pass,
      detail_text("bargmann %.3g, holonomy@2000 %.3g, doubling ratio >= %.3g "
                  "(%d/40 measurable)",
                  worst_bargmann, worst_holonomy, min_ratio, measurable)};
}

CheckResult check_circuit_closure() {
  std::mt19937_64 gen(303);
  double worst_phase = 0.0;
  double worst_leak = 0.0;
  double worst_mod = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const GeodesicTriangle t = sample_triangle(gen);
    const ElementSequence seq = triangle_sequence(t);
    const StateVector out =
        interferometer_matrix(seq) * StateVector::basis(0);
    worst_phase =
        std::max(worst_phase,
                 phase_distance(std::arg(out[0]),
                                geometric_phase_closed_form(t.params)));
    worst_mod = std::max(worst_mod, std::abs(1.0 - std::abs(out[0])));
    const std::array<double, 3> p = port_probabilities(seq, 1);
    worst_leak = std::max({worst_leak, p[1], p[2]});
  }
  const bool pass = worst_phase < 1e-10 && worst_leak < 1e-18;
  return CheckResult{
      3, "nine-element circuit returns port 1 with the closed-form phase",
      pass,
      detail_text("phase deviation %.3g, port-2/3 leak %.3g, |amp|-1 %.3g, "
                  "1000 circuits",
                  worst_phase, worst_leak, worst_mod)};
}

CheckResult check_geodesic_conditions() {
  std::mt19937_64 gen(404);
  double worst_imag = 0.0, worst_curve = 0.0;
  double worst_identity = 0.0, worst_endpoint = 0.0;
  for (int i = 0; i < 100; ++i) {
    const GeodesicTriangle t = sample_triangle(gen);
    const std::array<SideSpec, 3> sides = sides_of(t);
    for (int k = 1; k <= 3; ++k) {
      const SideSpec& side = sides[static_cast<size_t>(k - 1)];
      worst_identity = std::max(
          worst_identity, frobenius_distance(geodesic_operator(k, 0.0, t),
                                             Unitary3::identity()));
      worst_endpoint = std::max(
          worst_endpoint,
          vec_distance(geodesic_operator(k, side.arc, t) * side.from,
                       side.to));
      for (int j = 1; j <= 20; ++j) {
        const double s = side.arc * static_cast<double>(j) / 21.0;
        const StateVector moved = geodesic_operator(k, s, t) * side.from;
        worst_imag =
            std::max(worst_imag, std::abs(inner(side.from, moved).imag()));
        worst_curve = std::max(
            worst_curve,
            vec_distance(moved, geodesic_point(side.from, side.to, s)));
      }
    }
  }
  const bool pass = worst_imag < 1e-10 && worst_curve < 1e-10 &&
                    worst_identity <= 1e-12 && worst_endpoint <= 1e-12;
  return CheckResult{
      4, "side operators trace the geodesics with transported phase", pass,
      detail_text("imag %.3g, curve %.3g, identity %.3g, endpoint %.3g, "
                  "100 triangles",
                  worst_imag, worst_curve, worst_identity, worst_endpoint)};
}

CheckResult check_dynamical_cancellation() {
  std::mt19937_64 gen(505);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const GeodesicTriangle t = sample_triangle(gen);
    const ElementSequence seq = triangle_sequence(t);
    const double target =
        canonical_angle(2.0 * geometric_phase_closed_form(t.params));
    for (int rep = 0; rep < 10; ++rep) {
      DynamicalPhases dyn(seq.elements.size());
      for (double& d : dyn) d = uniform_in(gen, 0.0, 2.0 * kPi);
      const Complex f = forward_amplitude(seq, dyn);
      const Complex b = backward_amplitude(seq, dyn);
      worst =
          std::max(worst, phase_distance(std::arg(f * std::conj(b)), target));
    }
  }
  return CheckResult{
      5, "counter-propagating interference cancels dynamical phases",
      worst <= 1e-10,
      detail_text("max |rel - 2*phi| %.3g over 100 phase vectors", worst)};
}

CheckResult check_two_level_reduction() {
  std::mt19937_64 gen(606);
  TriangleSampleOptions opt;
  opt.beta_zero = true;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const GeodesicTriangle t = sample_triangle(gen, opt);
    const std::array<double, 3> n1 = bloch_vector(t.v1.c1(), t.v1.c2());
    const std::array<double, 3> n2 = bloch_vector(t.v2.c1(), t.v2.c2());
    const std::array<double, 3> n3 = bloch_vector(t.v3.c1(), t.v3.c2());
    const double oracle =
        canonical_angle(-0.5 * signed_solid_angle(n1, n2, n3));
    worst = std::max(
        worst, phase_distance(oracle, geometric_phase_closed_form(t.params)));
  }
  return CheckResult{
      6, "planar triangles reduce to minus half the Bloch solid angle",
      worst <= 1e-10,
      detail_text("max deviation %.3g over 100 triangles", worst)};
}

CheckResult check_decomposition_roundtrip() {
  double worst = 0.0;
  size_t max_elements = 0;
  for (int i = 0; i < 1000; ++i) {
    const Unitary3 u = random_su3(7000 + static_cast<std::uint64_t>(i));
    const ElementSequence seq = decompose_su3(u);
    max_elements = std::max(max_elements, seq.elements.size());
    worst = std::max(worst, frobenius_distance(interferometer_matrix(seq), u));
  }
  return CheckResult{
      7, "beam-splitter factorization recomposes Haar unitaries",
      worst <= 1e-10,
      detail_text("max Frobenius error %.3g, <= %zu elements, 1000 matrices",
                  worst, max_elements)};
}

CheckResult check_statistical_recovery() {
  std::mt19937_64 gen(808);
  std::vector<double> deltas(24);
  for (size_t j = 0; j < deltas.size(); ++j) {
    deltas[j] = 2.0 * kPi * static_cast<double>(j) / 24.0;
  }
  int successes = 0;
  double worst_pull = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const GeodesicTriangle t = sample_triangle(gen);
    const ElementSequence seq = triangle_sequence(t);
    const double truth =
        canonical_angle(2.0 * geometric_phase_closed_form(t.params));
    const std::vector<CountRecord> counts =
        low_light_counts(seq, {}, deltas, 100000,
                         424242 + static_cast<std::uint64_t>(trial));
    const PhaseFit fit = estimate_phase(counts);
    const double pull = phase_distance(fit.phase, truth) / fit.std_error;
    worst_pull = std::max(worst_pull, pull);
    if (pull <= 3.0) ++successes;
  }
  return CheckResult{
      8, "photon-counting fringes recover twice the phase within errors",
      successes >= 99,
      detail_text("%d/100 trials within 3 sigma, worst pull %.3g",
                  successes, worst_pull)};
}

std::vector<CheckResult> run_core_checks() {
  return {check_closed_form_vs_construction(),
          check_phase_oracle_agreement(),
          check_circuit_closure(),
          check_geodesic_conditions(),
          check_dynamical_cancellation(),
          check_two_level_reduction(),
          check_decomposition_roundtrip()};
}

}  // namespace triphase
