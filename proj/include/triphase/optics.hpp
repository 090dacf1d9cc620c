#pragma once

#include <array>
#include <string>
#include <vector>

#include "triphase/geometry.hpp"
#include "triphase/linalg.hpp"

// Multiport synthesis: two-channel beam-splitter elements, the geodesic
// evolution operators of a triangle, the nine-element closed circuit, and
// a constructive decomposition of an arbitrary SU(3) transfer matrix.
//
// An ElementSequence stores elements in propagation order: light meets
// elements[0] first, and the total transfer matrix of [E1, E2] is E2*E1.

namespace triphase {

// Parameters of a two-channel element. Acting on channels (j, k) it is
//   [ e^{i phi_t} cos theta   -e^{-i phi_r} sin theta ]
//   [ e^{i phi_r} sin theta    e^{-i phi_t} cos theta ]
// embedded in the 3x3 identity; cos^2 theta is the transmission. This is
// the general determinant-1 two-channel unitary.
struct BsParams {
  double phi_t = 0.0;
  double theta = 0.0;
  double phi_r = 0.0;

  // Folds theta into [0, pi/2] (absorbing signs into the phases) and wraps
  // both phases into (-pi, pi]. The matrix is unchanged.
  static BsParams canonical(double phi_t, double theta, double phi_r);
};

enum class ElementKind {
  BS12,   // acts on channels 1,2
  BS23,   // acts on channels 2,3
  Phase,  // diagonal (e^{i d1}, e^{i d2}, e^{i d3}) with d1+d2+d3 = 0
};

struct Element {
  ElementKind kind = ElementKind::Phase;
  BsParams bs;                              // BS12 / BS23 only
  std::array<double, 3> deltas{0, 0, 0};    // Phase only

  static Element bs12(const BsParams& p);
  static Element bs23(const BsParams& p);
  static Element phase(double d1, double d2, double d3);

  // Phase-free channel-1,2 rotation by s (any sign; canonicalized).
  static Element rotation12(double s);

  Unitary3 matrix() const;
  Element inverse() const;

  // 1-based channels touched by the element.
  std::vector<int> channels() const;
};

struct ElementSequence {
  std::vector<Element> elements;
  std::string label;
};

// Phase-free rotation in channels 1,2 by angle s (the plane rotation
// cos/sin in the upper block).
Unitary3 r12(double s);

// General two-channel element on channels 2,3.
Unitary3 r23(const BsParams& p);

// Evolution operator U_k(s) that carries vertex k along side k of the
// triangle: U_k(0) = I, U_k(s_k0) maps v_k to the next vertex (v4 means
// e^{i xi} v1), and <v_k| U_k(s) |v_k> = cos s is real and positive.
// k is 1-based; s must lie in [0, s_k0].
Unitary3 geodesic_operator(int k, double s, const GeodesicTriangle& t);

// The beam-splitter realization of U_k(s) in propagation order:
// k=1 -> 1 element, k=2 -> 5 elements, k=3 -> 3 elements.
ElementSequence element_sequence_for(int k, double s,
                                     const GeodesicTriangle& t);

// Full closed circuit: the three side sequences at full arc lengths
// concatenated, nine elements total.
ElementSequence triangle_sequence(const GeodesicTriangle& t);

// Transfer matrix of a sequence (identity when empty).
Unitary3 interferometer_matrix(const ElementSequence& seq);

// Factors a special unitary into [BS23, BS12, BS23] in propagation order,
// appending a Phase element only when a diagonal residual above the
// construction tolerance remains (the three-element elimination already
// reaches every SU(3), so the residual is normally identity).
ElementSequence decompose_su3(const Unitary3& u);

}  // namespace triphase
