#include "triphase/optics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "triphase/constants.hpp"
#include "triphase/errors.hpp"

namespace triphase {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw InvalidParams(std::string("optics: non-finite ") + what);
  }
}

// 2x2 determinant-1 block of a two-channel element.
struct Block {
  Complex a, b, c, d;
};

Block bs_block(const BsParams& p) {
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  return {std::polar(ct, p.phi_t), -std::polar(st, -p.phi_r),
          std::polar(st, p.phi_r), std::polar(ct, -p.phi_t)};
}

// Extracts canonical BsParams from a determinant-1 two-channel block
// [a, b; -conj(b), conj(a)].
BsParams params_from_block(Complex a, Complex b) {
  const double theta = std::atan2(std::abs(b), std::abs(a));
  const double phi_t = std::abs(a) > 1e-300 ? std::arg(a) : 0.0;
  const double phi_r = std::abs(b) > 1e-300 ? std::arg(-std::conj(b)) : 0.0;
  return BsParams::canonical(phi_t, theta, phi_r);
}

}  // namespace

BsParams BsParams::canonical(double phi_t, double theta, double phi_r) {
  require_finite(phi_t, "phi_t");
  require_finite(theta, "theta");
  require_finite(phi_r, "phi_r");

  double th = canonical_angle(theta);  // (-pi, pi]
  if (th < 0.0) {                      // theta -> -theta absorbs into phi_r
    th = -th;
    phi_r += kPi;
  }
  if (th > kPi / 2.0) {  // theta -> pi - theta absorbs into phi_t
    th = kPi - th;
    phi_t += kPi;
  }
  return BsParams{canonical_angle(phi_t), th, canonical_angle(phi_r)};
}

Element Element::bs12(const BsParams& p) {
  Element e;
  e.kind = ElementKind::BS12;
  e.bs = BsParams::canonical(p.phi_t, p.theta, p.phi_r);
  return e;
}

Element Element::bs23(const BsParams& p) {
  Element e;
  e.kind = ElementKind::BS23;
  e.bs = BsParams::canonical(p.phi_t, p.theta, p.phi_r);
  return e;
}

Element Element::phase(double d1, double d2, double d3) {
  require_finite(d1, "delta");
  require_finite(d2, "delta");
  require_finite(d3, "delta");
  if (std::abs(d1 + d2 + d3) > 1e-9) {
    throw InvalidParams("Element::phase: deltas must sum to zero");
  }
  Element e;
  e.kind = ElementKind::Phase;
  e.deltas = {d1, d2, d3};
  return e;
}

Element Element::rotation12(double s) {
  return bs12(BsParams::canonical(0.0, s, 0.0));
}

Unitary3 Element::matrix() const {
  switch (kind) {
    case ElementKind::BS12: {
      const Block k = bs_block(bs);
      return Unitary3({k.a, k.b, Complex(0),  //
                       k.c, k.d, Complex(0),  //
                       Complex(0), Complex(0), Complex(1)});
    }
    case ElementKind::BS23: {
      const Block k = bs_block(bs);
      return Unitary3({Complex(1), Complex(0), Complex(0),  //
                       Complex(0), k.a, k.b,                //
                       Complex(0), k.c, k.d});
    }
    case ElementKind::Phase:
      return Unitary3({std::polar(1.0, deltas[0]), Complex(0), Complex(0),
                       Complex(0), std::polar(1.0, deltas[1]), Complex(0),
                       Complex(0), Complex(0), std::polar(1.0, deltas[2])});
  }
  throw ConsistencyError("Element::matrix: unknown kind");
}

Element Element::inverse() const {
  switch (kind) {
    case ElementKind::BS12:
      return bs12(BsParams::canonical(-bs.phi_t, bs.theta, bs.phi_r + kPi));
    case ElementKind::BS23:
      return bs23(BsParams::canonical(-bs.phi_t, bs.theta, bs.phi_r + kPi));
    case ElementKind::Phase:
      return phase(-deltas[0], -deltas[1], -deltas[2]);
  }
  throw ConsistencyError("Element::inverse: unknown kind");
}

std::vector<int> Element::channels() const {
  switch (kind) {
    case ElementKind::BS12:
      return {1, 2};
    case ElementKind::BS23:
      return {2, 3};
    case ElementKind::Phase:
      return {1, 2, 3};
  }
  throw ConsistencyError("Element::channels: unknown kind");
}

Unitary3 r12(double s) {
  require_finite(s, "rotation angle");
  const double c = std::cos(s), n = std::sin(s);
  return Unitary3({Complex(c), Complex(-n), Complex(0),  //
                   Complex(n), Complex(c), Complex(0),   //
                   Complex(0), Complex(0), Complex(1)});
}

Unitary3 r23(const BsParams& p) {
  const Block k = bs_block(p);
  return Unitary3({Complex(1), Complex(0), Complex(0),  //
                   Complex(0), k.a, k.b,                //
                   Complex(0), k.c, k.d});
}

namespace {

double side_arc(int k, const GeodesicTriangle& t) {
  switch (k) {
    case 1:
      return t.params.s1_0;
    case 2:
      return t.params.s2_0;
    case 3:
      return t.s3_0;
    default:
      throw OutOfRange("side index must be 1, 2 or 3");
  }
}

void require_arc(int k, double s, const GeodesicTriangle& t) {
  if (!std::isfinite(s) || s < -1e-12 || s > side_arc(k, t) + 1e-12) {
    throw OutOfRange("arc length outside [0, s_k0] for side " +
                     std::to_string(k));
  }
}

}  // namespace

Unitary3 geodesic_operator(int k, double s, const GeodesicTriangle& t) {
  require_arc(k, s, t);
  switch (k) {
    case 1:
      return r12(s);
    case 2: {
      // Conjugate the channel-1,2 rotation into the frame of side 2.
      const Unitary3 w = r23(BsParams{t.params.alpha, t.params.beta, 0.0});
      return r12(t.params.s1_0) * w * r12(s) * w.adjoint() *
             r12(-t.params.s1_0);
    }
    case 3: {
      const Unitary3 w =
          r23(BsParams{t.angles.chi, t.angles.tau, -t.angles.xi});
      return w * r12(-s) * w.adjoint();
    }
    default:
      throw OutOfRange("geodesic_operator: side index must be 1, 2 or 3");
  }
}

ElementSequence element_sequence_for(int k, double s,
                                     const GeodesicTriangle& t) {
  require_arc(k, s, t);
  ElementSequence seq;
  switch (k) {
    case 1:
      seq.label = "U1";
      seq.elements = {Element::rotation12(s)};
      break;
    case 2: {
      seq.label = "U2";
      const Element mix =
          Element::bs23(BsParams{t.params.alpha, t.params.beta, 0.0});
      seq.elements = {Element::rotation12(-t.params.s1_0), mix.inverse(),
                      Element::rotation12(s), mix,
                      Element::rotation12(t.params.s1_0)};
      break;
    }
    case 3: {
      seq.label = "U3";
      const Element mix =
          Element::bs23(BsParams{t.angles.chi, t.angles.tau, -t.angles.xi});
      seq.elements = {mix.inverse(), Element::rotation12(-s), mix};
      break;
    }
    default:
      throw OutOfRange("element_sequence_for: side index must be 1, 2 or 3");
  }
  return seq;
}

ElementSequence triangle_sequence(const GeodesicTriangle& t) {
  ElementSequence seq;
  seq.label = "triangle";
  for (int k = 1; k <= 3; ++k) {
    const ElementSequence part = element_sequence_for(k, side_arc(k, t), t);
    seq.elements.insert(seq.elements.end(), part.elements.begin(),
                        part.elements.end());
  }
  return seq;
}

Unitary3 interferometer_matrix(const ElementSequence& seq) {
  Unitary3 total = Unitary3::identity();
  for (const Element& e : seq.elements) total = e.matrix() * total;
  return total;
}

ElementSequence decompose_su3(const Unitary3& u) {
  if (!is_special_unitary(u, 1e-9)) {
    throw InvalidParams("decompose_su3: input must have unit determinant");
  }

  // Eliminate on the adjoint: with C*B*A*u^dag diagonal it follows that
  // u = D^dag * C * B * A, i.e. propagation order [A(BS23), B(BS12),
  // C(BS23), Phase(D^dag)].
  const Unitary3 z = u.adjoint();

  // A: a channel-2,3 element annihilating the (3,1) entry.
  const Complex z21 = z.at(1, 0), z31 = z.at(2, 0);
  BsParams pa{0.0, 0.0, 0.0};
  if (std::abs(z31) > 0.0) {
    const double theta = std::atan2(std::abs(z31), std::abs(z21));
    const double g2 = std::abs(z21) > 0.0 ? std::arg(z21) : 0.0;
    const double g3 = std::arg(z31);
    pa = BsParams::canonical(0.0, theta, kPi + g3 - g2);
  }
  const Unitary3 ma = r23(pa);
  const Unitary3 w = ma * z;

  // B: a channel-1,2 element sending column 1 to (1, 0, 0).
  const Complex w1 = w.at(0, 0), w2 = w.at(1, 0);
  const double rho1 = std::abs(w1), rho2 = std::abs(w2);
  const double g1 = rho1 > 0.0 ? std::arg(w1) : 0.0;
  const double g2p = rho2 > 0.0 ? std::arg(w2) : 0.0;
  const BsParams pb =
      BsParams::canonical(-g1, std::atan2(rho2, rho1), kPi + g2p);
  const Element eb = Element::bs12(pb);
  const Unitary3 x = eb.matrix() * w;

  // The remainder acts on channels 2,3 only; invert its block.
  const Complex va = x.at(1, 1), vb = x.at(1, 2);
  const BsParams pc = params_from_block(std::conj(va), -vb);
  const Unitary3 mc = r23(pc);
  const Unitary3 d = mc * x;

  ElementSequence seq;
  seq.label = "su3-decomposition";
  seq.elements = {Element::bs23(pa), eb, Element::bs23(pc)};

  // Diagonal residual; identity up to rounding by construction.
  const double d1 = std::arg(d.at(0, 0));
  const double d2 = std::arg(d.at(1, 1));
  const double d3 = std::arg(d.at(2, 2));
  if (std::max({std::abs(d1), std::abs(d2), std::abs(d3)}) >
      tol::construction) {
    seq.elements.push_back(Element::phase(-d1, -d2, d1 + d2));
  }
  return seq;
}

}  // namespace triphase
