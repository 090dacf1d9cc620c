#include <cmath>
#include <random>

#include <doctest.h>

#include "test_support.hpp"
#include "triphase/constants.hpp"
#include "triphase/errors.hpp"
#include "triphase/geometry.hpp"
#include "triphase/sampling.hpp"

using namespace triphase;
using triphase::testing::vec_distance;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Canonical reference triangle: all four phase routes give -pi/4 and the
// third vertex is (0.5 - 0.5i, 0.5 + 0.5i, 0), both solved by hand from
// the vertex formulas.
const TriangleParams kRef{kPi / 4, kPi / 4, kPi / 2, 0.0};

StateVector recompose(const Psi3Angles& a) {
  return StateVector(std::polar(std::cos(a.eta), a.xi),
                     std::polar(std::sin(a.eta) * std::cos(a.tau),
                                a.xi + a.chi),
                     Complex(std::sin(a.eta) * std::sin(a.tau)));
}

}  // namespace

TEST_CASE("angle canonicalization and circle distance") {
  CHECK(canonical_angle(0.0) == 0.0);
  CHECK(canonical_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(canonical_angle(kPi) == doctest::Approx(kPi));
  CHECK(canonical_angle(-kPi) == doctest::Approx(kPi));
  CHECK(canonical_angle(2 * kPi + 0.25) == doctest::Approx(0.25));

  CHECK(phase_distance(0.1, -0.1) == doctest::Approx(0.2));
  CHECK(phase_distance(kPi - 0.1, -kPi + 0.1) == doctest::Approx(0.2));
  CHECK(phase_distance(1.0, 1.0) == 0.0);
}

TEST_CASE("parameter validation enforces the documented domains") {
  CHECK_NOTHROW(validate_ranges(kRef));
  TriangleParams p = kRef;

  p.s1_0 = 0.0;
  CHECK_THROWS_AS(validate_ranges(p), InvalidParams);
  p.s1_0 = kPi / 2;
  CHECK_THROWS_AS(validate_ranges(p), InvalidParams);

  p = kRef;
  p.s2_0 = -0.1;
  CHECK_THROWS_AS(validate_ranges(p), InvalidParams);

  p = kRef;
  p.alpha = -0.001;
  CHECK_THROWS_AS(validate_ranges(p), InvalidParams);
  p.alpha = 2 * kPi;
  CHECK_THROWS_AS(validate_ranges(p), InvalidParams);

  p = kRef;
  p.beta = kPi + 0.001;
  CHECK_THROWS_AS(validate_ranges(p), InvalidParams);
  p.beta = std::nan("");
  CHECK_THROWS_AS(validate_ranges(p), InvalidParams);
}

TEST_CASE("reference triangle vertices and extracted angles") {
  const GeodesicTriangle t = triangle_vertices(kRef);

  CHECK(vec_distance(t.v1, {Complex(1), Complex(0), Complex(0)}) == 0.0);
  const double r = std::sqrt(0.5);
  CHECK(vec_distance(t.v2, {Complex(r), Complex(r), Complex(0)}) <
        tol::construction);
  CHECK(vec_distance(t.v3, {Complex(0.5, -0.5), Complex(0.5, 0.5),
                            Complex(0)}) < tol::construction);

  CHECK(t.angles.xi == doctest::Approx(-kPi / 4).epsilon(1e-12));
  CHECK(t.angles.eta == doctest::Approx(kPi / 4).epsilon(1e-12));
  CHECK(t.angles.tau == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(t.angles.chi == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(t.s3_0 == t.angles.eta);
}

TEST_CASE("side overlaps are the side cosines, real and positive") {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 50; ++i) {
    const GeodesicTriangle t = sample_triangle(gen);
    const Complex o21 = inner(t.v2, t.v1);
    const Complex o32 = inner(t.v3, t.v2);
    CHECK(std::abs(o21 - Complex(std::cos(t.params.s1_0))) <
          tol::construction);
    CHECK(std::abs(o32 - Complex(std::cos(t.params.s2_0))) <
          tol::construction);
    CHECK(std::abs(o21.imag()) < tol::construction);
    CHECK(std::abs(o32.imag()) < tol::construction);
  }
}

TEST_CASE("beta = pi/2 kills the interference terms in the third vertex") {
  const GeodesicTriangle t =
      triangle_vertices({kPi / 4, kPi / 4, 1.234, kPi / 2});
  const double r = std::sqrt(0.5);
  CHECK(vec_distance(t.v3, {Complex(0.5), Complex(0.5), Complex(r)}) <
        tol::construction);
  CHECK(geometric_phase_closed_form({kPi / 4, kPi / 4, 1.234, kPi / 2}) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("degenerate and undefined configurations raise typed errors") {
  // alpha = pi, beta = 0, equal sides: third vertex returns to the first.
  CHECK_THROWS_AS(triangle_vertices({kPi / 4, kPi / 4, kPi, 0.0}),
                  DegenerateTriangle);
  // alpha = 0, beta = 0, s1+s2 = pi/2: third vertex orthogonal to v1.
  CHECK_THROWS_AS(geometric_phase_closed_form({kPi / 4, kPi / 4, 0.0, 0.0}),
                  UndefinedPhase);
  CHECK_THROWS_AS(triangle_vertices({kPi / 4, kPi / 4, 0.0, 0.0}),
                  UndefinedDecomposition);
  CHECK_THROWS_AS(geometric_phase_closed_form({kPi / 4, kPi / 4, kPi, 0.0}),
                  DegenerateTriangle);
}

TEST_CASE("angle extraction round-trips random valid angle tuples") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Psi3Angles in;
    in.xi = canonical_angle((2 * u(gen) - 1) * kPi);
    in.eta = 0.05 + u(gen) * (kPi / 2 - 0.1);
    in.tau = 0.05 + u(gen) * (kPi / 2 - 0.1);
    in.chi = canonical_angle((2 * u(gen) - 1) * kPi);

    const Psi3Angles out = extract_angles(recompose(in));
    CHECK(phase_distance(out.xi, in.xi) < tol::recomposition);
    CHECK(std::abs(out.eta - in.eta) < tol::recomposition);
    CHECK(std::abs(out.tau - in.tau) < tol::recomposition);
    CHECK(phase_distance(out.chi, in.chi) < tol::recomposition);
    CHECK(vec_distance(recompose(out), recompose(in)) < tol::recomposition);
  }
}

TEST_CASE("angle extraction rejects singular vertices") {
  CHECK_THROWS_AS(extract_angles(StateVector::basis(0)),
                  UndefinedDecomposition);
  // First component zero: eta = pi/2 but xi is undefined.
  const double r = std::sqrt(0.5);
  CHECK_THROWS_AS(
      extract_angles(StateVector(Complex(0), Complex(r), Complex(r))),
      UndefinedDecomposition);
  // Third component negative.
  CHECK_THROWS_AS(
      extract_angles(StateVector(Complex(r), Complex(0), Complex(-r))),
      UndefinedDecomposition);
}

TEST_CASE("geodesic point interpolates the great-circle arc") {
  const StateVector a = StateVector::basis(0);
  const StateVector b(Complex(std::cos(kPi / 3)), Complex(std::sin(kPi / 3)),
                      Complex(0));

  CHECK(vec_distance(geodesic_point(a, b, 0.0), a) == 0.0);
  CHECK(vec_distance(geodesic_point(a, b, kPi / 3), b) < tol::construction);
  CHECK(vec_distance(geodesic_point(a, b, kPi / 6),
                     {Complex(std::cos(kPi / 6)), Complex(std::sin(kPi / 6)),
                      Complex(0)}) < tol::construction);

  // Interior points keep real positive overlaps with both endpoints.
  for (double s : {0.2, 0.5, 0.9}) {
    const StateVector x = geodesic_point(a, b, s);
    CHECK(std::abs(x.norm() - 1.0) < tol::construction);
    CHECK(std::abs(inner(x, a).imag()) < tol::construction);
    CHECK(inner(x, a).real() > 0.0);
    CHECK(std::abs(inner(b, x).imag()) < tol::construction);
    CHECK(inner(b, x).real() > 0.0);
  }
}

TEST_CASE("geodesic point rejects bad overlaps and arc lengths") {
  const StateVector a = StateVector::basis(0);
  const StateVector b(Complex(std::cos(kPi / 3)), Complex(std::sin(kPi / 3)),
                      Complex(0));

  // Orthogonal endpoints: overlap 0.
  CHECK_THROWS_AS(geodesic_point(a, StateVector::basis(1), 0.1),
                  InvalidOverlap);
  // Identical rays: overlap 1.
  CHECK_THROWS_AS(geodesic_point(a, a, 0.0), InvalidOverlap);
  // Complex overlap: caller must re-gauge first.
  CHECK_THROWS_AS(geodesic_point(a, b.with_phase(0.5), 0.1), InvalidOverlap);
  // Arc length outside [0, arccos<b|a>].
  CHECK_THROWS_AS(geodesic_point(a, b, -0.1), OutOfRange);
  CHECK_THROWS_AS(geodesic_point(a, b, kPi / 3 + 0.1), OutOfRange);
}

TEST_CASE("closed form equals the extracted xi on random triangles") {
  std::mt19937_64 gen(41);
  for (int i = 0; i < 300; ++i) {
    const TriangleParams p = sample_triangle_params(gen);
    const double closed = geometric_phase_closed_form(p);
    const GeodesicTriangle t = triangle_vertices(p);
    CHECK(phase_distance(closed, t.angles.xi) < tol::construction);
  }
}

TEST_CASE("bargmann product reproduces the closed form and is gauge "
          "invariant") {
  const GeodesicTriangle t = triangle_vertices(kRef);
  CHECK(phase_distance(bargmann_phase(t), -kPi / 4) < tol::construction);

  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int i = 0; i < 100; ++i) {
    const GeodesicTriangle s = sample_triangle(gen);
    const double expect = geometric_phase_closed_form(s.params);
    CHECK(phase_distance(bargmann_phase(s), expect) < tol::construction);

    GeodesicTriangle gauged = s;
    gauged.v2 = s.v2.with_phase(u(gen));
    gauged.v3 = s.v3.with_phase(u(gen));
    CHECK(phase_distance(bargmann_phase(gauged), expect) < tol::construction);
  }
}

TEST_CASE("discrete holonomy converges to the closed form at second order") {
  const GeodesicTriangle t = triangle_vertices(kRef);
  CHECK(phase_distance(holonomy_phase_discrete(t, 2000), -kPi / 4) < 1e-4);

  const GeodesicTriangle flat =
      triangle_vertices({0.6, 0.7, 2.0, kPi / 2});
  CHECK(phase_distance(holonomy_phase_discrete(flat, 2000), 0.0) < 1e-4);

  CHECK_THROWS_AS(holonomy_phase_discrete(t, 1), OutOfRange);

  // Doubling the step count shrinks the error by at least ~3x.
  std::mt19937_64 gen(47);
  for (int i = 0; i < 10; ++i) {
    const GeodesicTriangle s = sample_triangle(gen);
    const double truth = geometric_phase_closed_form(s.params);
    const double coarse =
        phase_distance(holonomy_phase_discrete(s, 200), truth);
    const double fine =
        phase_distance(holonomy_phase_discrete(s, 400), truth);
    if (fine > 1e-12) {
      CHECK(coarse / fine >= 3.0);
    }
  }
}

TEST_CASE("bloch vectors of the two-level reduction") {
  const double r = std::sqrt(0.5);
  auto near = [](const std::array<double, 3>& v,
                 const std::array<double, 3>& w) {
    return std::abs(v[0] - w[0]) + std::abs(v[1] - w[1]) +
               std::abs(v[2] - w[2]) <
           1e-12;
  };
  CHECK(near(bloch_vector(Complex(1), Complex(0)), {0, 0, 1}));
  CHECK(near(bloch_vector(Complex(0), Complex(1)), {0, 0, -1}));
  CHECK(near(bloch_vector(Complex(r), Complex(r)), {1, 0, 0}));
  CHECK(near(bloch_vector(Complex(r), Complex(0, r)), {0, 1, 0}));
  CHECK_THROWS_AS(bloch_vector(Complex(0), Complex(0)), UndefinedPhase);
}

TEST_CASE("two-level triangles obey the solid-angle rule") {
  // Reference triangle on the Bloch sphere: +z, +x, +y octant, oriented
  // solid angle +pi/2, so the phase is -pi/4.
  const GeodesicTriangle t = triangle_vertices(kRef);
  const double omega =
      signed_solid_angle(bloch_vector(t.v1.c1(), t.v1.c2()),
                         bloch_vector(t.v2.c1(), t.v2.c2()),
                         bloch_vector(t.v3.c1(), t.v3.c2()));
  CHECK(omega == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(phase_distance(geometric_phase_closed_form(kRef), -0.5 * omega) <
        tol::recomposition);

  // Swapping two vertices flips the orientation sign.
  const double flipped =
      signed_solid_angle(bloch_vector(t.v2.c1(), t.v2.c2()),
                         bloch_vector(t.v1.c1(), t.v1.c2()),
                         bloch_vector(t.v3.c1(), t.v3.c2()));
  CHECK(flipped == doctest::Approx(-omega).epsilon(1e-12));

  std::mt19937_64 gen(53);
  TriangleSampleOptions opt;
  opt.beta_zero = true;
  for (int i = 0; i < 100; ++i) {
    const GeodesicTriangle s = sample_triangle(gen, opt);
    CHECK(std::abs(s.v3.c3()) < tol::construction);
    const double phase = geometric_phase_closed_form(s.params);
    const double area =
        signed_solid_angle(bloch_vector(s.v1.c1(), s.v1.c2()),
                           bloch_vector(s.v2.c1(), s.v2.c2()),
                           bloch_vector(s.v3.c1(), s.v3.c2()));
    CHECK(phase_distance(phase, canonical_angle(-0.5 * area)) <
          tol::recomposition);
  }
}
