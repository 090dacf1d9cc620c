#include <cmath>
#include <random>

#include <doctest.h>

#include "test_support.hpp"
#include "triphase/constants.hpp"
#include "triphase/errors.hpp"
#include "triphase/optics.hpp"
#include "triphase/sampling.hpp"

using namespace triphase;
using triphase::testing::identity_distance;
using triphase::testing::ray_distance;
using triphase::testing::vec_distance;

namespace {

constexpr double kPi = 3.14159265358979323846;

const TriangleParams kRef{kPi / 4, kPi / 4, kPi / 2, 0.0};

}  // namespace

TEST_CASE("channel-1,2 rotation basics") {
  CHECK(identity_distance(r12(0.0)) == 0.0);
  CHECK(vec_distance(r12(kPi / 2) * StateVector::basis(0),
                     {Complex(0), Complex(1), Complex(0)}) <
        tol::construction);
  CHECK(identity_distance(r12(0.7) * r12(-0.7)) < tol::construction);
  CHECK(frobenius_distance(r12(0.3) * r12(0.4), r12(0.7)) <
        tol::construction);
}

TEST_CASE("channel-2,3 element matrix") {
  CHECK(identity_distance(r23({0, 0, 0})) == 0.0);

  const Unitary3 quarter = r23({0, kPi / 2, 0});
  CHECK(vec_distance(quarter * StateVector::basis(2),
                     {Complex(0), Complex(-1), Complex(0)}) <
        tol::construction);
  CHECK(vec_distance(quarter * StateVector::basis(1),
                     {Complex(0), Complex(0), Complex(1)}) <
        tol::construction);

  const double r = std::sqrt(0.5);
  const Unitary3 m = r23({kPi / 2, kPi / 4, 0});
  CHECK(m.at(0, 0) == Complex(1));
  CHECK(std::abs(m.at(1, 1) - Complex(0, r)) < tol::construction);
  CHECK(std::abs(m.at(1, 2) - Complex(-r)) < tol::construction);
  CHECK(std::abs(m.at(2, 1) - Complex(r)) < tol::construction);
  CHECK(std::abs(m.at(2, 2) - Complex(0, -r)) < tol::construction);
  CHECK(std::abs(m.determinant() - Complex(1)) < tol::construction);
}

TEST_CASE("beam-splitter parameters canonicalize without changing the "
          "matrix") {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int i = 0; i < 200; ++i) {
    const double pt = u(gen), th = u(gen), pr = u(gen);
    const BsParams p = BsParams::canonical(pt, th, pr);
    CHECK(p.theta >= 0.0);
    CHECK(p.theta <= kPi / 2);
    CHECK(p.phi_t > -kPi);
    CHECK(p.phi_t <= kPi);
    CHECK(p.phi_r > -kPi);
    CHECK(p.phi_r <= kPi);
    CHECK(frobenius_distance(r23(p), r23({pt, th, pr})) < tol::propagated);
  }
}

TEST_CASE("element factories, inverses and channel lists") {
  const Element b12 = Element::bs12({0.3, 0.4, 0.5});
  const Element b23 = Element::bs23({-0.2, 1.1, 0.9});
  const Element ph = Element::phase(0.25, -0.45, 0.2);

  CHECK(b12.channels() == std::vector<int>{1, 2});
  CHECK(b23.channels() == std::vector<int>{2, 3});
  CHECK(ph.channels() == std::vector<int>{1, 2, 3});

  for (const Element& e : {b12, b23, ph}) {
    CHECK(is_special_unitary(e.matrix(), tol::construction));
    CHECK(identity_distance(e.matrix() * e.inverse().matrix()) <
          tol::construction);
    CHECK(identity_distance(e.inverse().matrix() * e.matrix()) <
          tol::construction);
  }

  CHECK_THROWS_AS(Element::phase(0.1, 0.2, 0.3), InvalidParams);

  // rotation12 with a negative angle stays a valid canonical element.
  const Element neg = Element::rotation12(-0.8);
  CHECK(frobenius_distance(neg.matrix(), r12(-0.8)) < tol::construction);
  CHECK(neg.bs.theta >= 0.0);
}

TEST_CASE("sequence order is propagation order") {
  // [BS12(pi/2)] sends channel 1 to channel 2, not the other way.
  ElementSequence seq;
  seq.elements.push_back(Element::rotation12(kPi / 2));
  const Unitary3 m = interferometer_matrix(seq);
  CHECK(vec_distance(m * StateVector::basis(0),
                     {Complex(0), Complex(1), Complex(0)}) <
        tol::construction);

  // [A, B] composes to B*A: apply A first.
  ElementSequence two;
  two.elements.push_back(Element::rotation12(kPi / 2));
  two.elements.push_back(Element::bs23({0, kPi / 2, 0}));
  CHECK(vec_distance(interferometer_matrix(two) * StateVector::basis(0),
                     {Complex(0), Complex(0), Complex(1)}) <
        tol::construction);
}

TEST_CASE("geodesic operators move the vertices along the sides") {
  const GeodesicTriangle t = triangle_vertices(kRef);
  const StateVector verts[3] = {t.v1, t.v2, t.v3};
  const double arcs[3] = {t.params.s1_0, t.params.s2_0, t.s3_0};

  for (int k = 1; k <= 3; ++k) {
    CHECK(identity_distance(geodesic_operator(k, 0.0, t)) <
          tol::construction);

    const StateVector from = verts[k - 1];
    const StateVector to = k == 3 ? t.v1.with_phase(t.angles.xi)
                                  : verts[k % 3];
    CHECK(vec_distance(geodesic_operator(k, arcs[k - 1], t) * from, to) <
          tol::construction);

    // Interior points follow the geodesic and keep a real positive
    // return overlap.
    const StateVector target =
        k == 3 ? t.v1.with_phase(t.angles.xi) : verts[k % 3];
    for (int j = 1; j <= 20; ++j) {
      const double s = arcs[k - 1] * j / 21.0;
      const StateVector moved = geodesic_operator(k, s, t) * from;
      const Complex stay = inner(from, moved);
      CHECK(std::abs(stay.imag()) < tol::recomposition);
      CHECK(stay.real() > 0.0);
      CHECK(vec_distance(moved, geodesic_point(from, target, s)) <
            tol::recomposition);
    }
  }

  CHECK_THROWS_AS(geodesic_operator(1, -0.2, t), OutOfRange);
  CHECK_THROWS_AS(geodesic_operator(2, t.params.s2_0 + 0.1, t), OutOfRange);
  CHECK_THROWS_AS(geodesic_operator(4, 0.1, t), OutOfRange);
}

TEST_CASE("element sequences recompose the geodesic operators") {
  std::mt19937_64 gen(67);
  const size_t expected[3] = {1, 5, 3};
  for (int i = 0; i < 30; ++i) {
    const GeodesicTriangle t = sample_triangle(gen);
    const double arcs[3] = {t.params.s1_0, t.params.s2_0, t.s3_0};
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 1; k <= 3; ++k) {
      const double s = arcs[k - 1] * u(gen);
      const ElementSequence seq = element_sequence_for(k, s, t);
      CHECK(seq.elements.size() == expected[k - 1]);
      CHECK(frobenius_distance(interferometer_matrix(seq),
                               geodesic_operator(k, s, t)) <
            tol::propagated);
    }
  }
}

TEST_CASE("the closed nine-element circuit returns the first port with the "
          "geometric phase") {
  std::mt19937_64 gen(71);
  for (int i = 0; i < 50; ++i) {
    const GeodesicTriangle t = sample_triangle(gen);
    const ElementSequence seq = triangle_sequence(t);
    CHECK(seq.elements.size() == 9);

    const StateVector out =
        interferometer_matrix(seq) * StateVector::basis(0);
    CHECK(std::abs(std::abs(out.c1()) - 1.0) < tol::recomposition);
    CHECK(phase_distance(std::arg(out.c1()),
                         geometric_phase_closed_form(t.params)) <
          tol::recomposition);
  }
}

TEST_CASE("interferometer matrix composes and cancels") {
  CHECK(identity_distance(interferometer_matrix({})) == 0.0);

  const GeodesicTriangle t = triangle_vertices(kRef);
  ElementSequence seq = triangle_sequence(t);
  ElementSequence cancel = seq;
  for (auto it = seq.elements.rbegin(); it != seq.elements.rend(); ++it) {
    cancel.elements.push_back(it->inverse());
  }
  CHECK(identity_distance(interferometer_matrix(cancel)) <
        tol::recomposition);
}

TEST_CASE("decomposition round-trips special unitaries") {
  // Identity decomposes to an identity product.
  CHECK(identity_distance(
            interferometer_matrix(decompose_su3(Unitary3::identity()))) <
        tol::recomposition);

  // Already-factored inputs round-trip tightly.
  std::mt19937_64 gen(73);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const Unitary3 m = r23({u(gen), u(gen), u(gen)});
    CHECK(frobenius_distance(interferometer_matrix(decompose_su3(m)), m) <
          tol::construction);
  }

  // Haar inputs: at most the three advertised elements plus an optional
  // diagonal residue, recomposition within the propagated tolerance.
  for (std::uint64_t seed = 500; seed < 700; ++seed) {
    const Unitary3 m = random_su3(seed);
    const ElementSequence seq = decompose_su3(m);
    CHECK(seq.elements.size() <= 4);
    CHECK(frobenius_distance(interferometer_matrix(seq), m) <
          tol::recomposition);
  }

  CHECK_THROWS_AS(decompose_su3(random_su3(1).with_global_phase(0.4)),
                  InvalidParams);
}

TEST_CASE("decomposed sequences expose canonical parameters") {
  const ElementSequence seq = decompose_su3(random_su3(321));
  for (const Element& e : seq.elements) {
    if (e.kind == ElementKind::Phase) {
      continue;
    }
    CHECK(e.bs.theta >= 0.0);
    CHECK(e.bs.theta <= kPi / 2);
    CHECK(std::abs(e.bs.phi_t) <= kPi);
    CHECK(std::abs(e.bs.phi_r) <= kPi);
  }
}
