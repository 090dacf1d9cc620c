#include "triphase/linalg.hpp"

#include <cmath>
#include <string>

#include "triphase/constants.hpp"
#include "triphase/errors.hpp"
#include "triphase/rng.hpp"

namespace triphase {

namespace {

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

StateVector::StateVector(Complex c1, Complex c2, Complex c3) : c_{c1, c2, c3} {
  for (const Complex& z : c_) {
    if (!finite(z)) throw InvalidParams("StateVector: non-finite component");
  }
  const double n = norm();
  if (std::abs(n - 1.0) > tol::construction) {
    throw InvalidParams("StateVector: norm " + std::to_string(n) +
                        " deviates from 1 beyond tolerance");
  }
}

StateVector StateVector::basis(int channel) {
  if (channel < 0 || channel > 2) {
    throw OutOfRange("StateVector::basis: channel must be 0, 1 or 2");
  }
  std::array<Complex, 3> c{Complex(0), Complex(0), Complex(0)};
  c[static_cast<size_t>(channel)] = Complex(1);
  return StateVector(c[0], c[1], c[2]);
}

double StateVector::norm() const {
  return std::sqrt(std::norm(c_[0]) + std::norm(c_[1]) + std::norm(c_[2]));
}

StateVector StateVector::with_phase(double phase) const {
  const Complex f = std::polar(1.0, phase);
  return StateVector(f * c_[0], f * c_[1], f * c_[2]);
}

Complex inner(const StateVector& a, const StateVector& b) {
  Complex s(0);
  for (int i = 0; i < 3; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Unitary3::Unitary3(const std::array<Complex, 9>& row_major) : m_(row_major) {
  double defect = 0.0;  // ||U U^dag - I||_F^2
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      Complex s(0);
      for (int k = 0; k < 3; ++k) {
        const Complex& a = m_[static_cast<size_t>(3 * r + k)];
        const Complex& b = m_[static_cast<size_t>(3 * c + k)];
        if (!finite(a)) throw InvalidParams("Unitary3: non-finite entry");
        s += a * std::conj(b);
      }
      if (r == c) s -= Complex(1);
      defect += std::norm(s);
    }
  }
  if (std::sqrt(defect) > tol::construction) {
    throw InvalidParams("Unitary3: unitarity defect " +
                        std::to_string(std::sqrt(defect)) +
                        " beyond tolerance");
  }
}

Unitary3 Unitary3::identity() {
  return Unitary3({Complex(1), Complex(0), Complex(0),  //
                   Complex(0), Complex(1), Complex(0),  //
                   Complex(0), Complex(0), Complex(1)});
}

Unitary3 Unitary3::adjoint() const {
  std::array<Complex, 9> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out[static_cast<size_t>(3 * r + c)] =
          std::conj(m_[static_cast<size_t>(3 * c + r)]);
  return Unitary3(out);
}

Unitary3 Unitary3::transpose() const {
  std::array<Complex, 9> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out[static_cast<size_t>(3 * r + c)] = m_[static_cast<size_t>(3 * c + r)];
  return Unitary3(out);
}

Complex Unitary3::determinant() const {
  const auto& m = m_;
  auto e = [&m](int r, int c) { return m[static_cast<size_t>(3 * r + c)]; };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
         e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

Unitary3 Unitary3::with_global_phase(double phase) const {
  const Complex f = std::polar(1.0, phase);
  std::array<Complex, 9> out;
  for (size_t i = 0; i < 9; ++i) out[i] = f * m_[i];
  return Unitary3(out);
}

Unitary3 mat_mul(const Unitary3& a, const Unitary3& b) {
  std::array<Complex, 9> out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      Complex s(0);
      for (int k = 0; k < 3; ++k) s += a.at(r, k) * b.at(k, c);
      out[static_cast<size_t>(3 * r + c)] = s;
    }
  }
  return Unitary3(out);
}

Unitary3 operator*(const Unitary3& a, const Unitary3& b) {
  return mat_mul(a, b);
}

StateVector apply(const Unitary3& u, const StateVector& v) {
  std::array<Complex, 3> out{Complex(0), Complex(0), Complex(0)};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[static_cast<size_t>(r)] += u.at(r, c) * v[c];
  return StateVector(out[0], out[1], out[2]);
}

StateVector operator*(const Unitary3& u, const StateVector& v) {
  return apply(u, v);
}

double frobenius_distance(const Unitary3& a, const Unitary3& b) {
  double s = 0.0;
  for (size_t i = 0; i < 9; ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

bool is_special_unitary(const Unitary3& u, double tolerance) {
  return std::abs(u.determinant() - Complex(1)) <= tolerance;
}

Unitary3 random_su3(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    // Complex Gaussian matrix, columns drawn in a fixed order.
    std::array<std::array<Complex, 3>, 3> col;
    for (int c = 0; c < 3; ++c) {
      for (int r = 0; r < 3; ++r) {
        const GaussPair g = gaussian_pair(gen);
        col[static_cast<size_t>(c)][static_cast<size_t>(r)] =
            Complex(g.first, g.second);
      }
    }

    // Gram-Schmidt with real positive projection norms. The diagonal of
    // the implicit triangular factor is then real positive, which removes
    // the phase ambiguity of the orthonormalization.
    auto dot = [](const std::array<Complex, 3>& a,
                  const std::array<Complex, 3>& b) {
      Complex s(0);
      for (int i = 0; i < 3; ++i)
        s += std::conj(a[static_cast<size_t>(i)]) * b[static_cast<size_t>(i)];
      return s;
    };
    auto nrm = [&dot](const std::array<Complex, 3>& a) {
      return std::sqrt(dot(a, a).real());
    };

    bool degenerate = false;
    for (int c = 0; c < 3 && !degenerate; ++c) {
      for (int p = 0; p < c; ++p) {
        const Complex coef = dot(col[static_cast<size_t>(p)],
                                 col[static_cast<size_t>(c)]);
        for (int r = 0; r < 3; ++r)
          col[static_cast<size_t>(c)][static_cast<size_t>(r)] -=
              coef * col[static_cast<size_t>(p)][static_cast<size_t>(r)];
      }
      const double n = nrm(col[static_cast<size_t>(c)]);
      if (n < 1e-8) {
        degenerate = true;
        break;
      }
      for (int r = 0; r < 3; ++r)
        col[static_cast<size_t>(c)][static_cast<size_t>(r)] /= n;
    }
    if (degenerate) continue;  // essentially never; redraw deterministically

    std::array<Complex, 9> m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        m[static_cast<size_t>(3 * r + c)] =
            col[static_cast<size_t>(c)][static_cast<size_t>(r)];

    // Remove the residual determinant phase to land in SU(3).
    Unitary3 u(m);
    const double d = std::arg(u.determinant());
    return u.with_global_phase(-d / 3.0);
  }
  throw ConsistencyError("random_su3: repeated degenerate Gaussian draws");
}

}  // namespace triphase
