#pragma once

#include <array>
#include <complex>
#include <cstdint>

// Exact-semantics linear algebra for one three-channel mode space.
// Everything is fixed size: vectors are C^3, matrices are 3x3 unitaries.
// Conventions used throughout the project:
//   * row index = output channel, column index = input channel
//   * inner(a, b) is conjugate-linear in the first argument
//   * channel indices in APIs are 0-based; user-facing ports are 1-based

namespace triphase {

using Complex = std::complex<double>;

class StateVector;
Complex inner(const StateVector& a, const StateVector& b);

// Unit vector in C^3. Construction validates finiteness and unit norm, so
// an instance is always a legal pure state of the three-channel system.
class StateVector {
 public:
  StateVector(Complex c1, Complex c2, Complex c3);

  // Basis ray of one channel, channel in {0, 1, 2}.
  static StateVector basis(int channel);

  const Complex& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  const std::array<Complex, 3>& entries() const { return c_; }

  Complex c1() const { return c_[0]; }
  Complex c2() const { return c_[1]; }
  Complex c3() const { return c_[2]; }

  double norm() const;

  // Same ray, representative rotated by exp(i*phase).
  StateVector with_phase(double phase) const;

 private:
  std::array<Complex, 3> c_;
};

// Unitary 3x3 matrix, row-major storage. Construction validates finiteness
// and ||U U^dag - I||_F against the construction tolerance. Determinant is
// not constrained here; factories that promise special unitaries check it.
class Unitary3 {
 public:
  explicit Unitary3(const std::array<Complex, 9>& row_major);

  static Unitary3 identity();

  const Complex& at(int row, int col) const {
    return m_[static_cast<size_t>(3 * row + col)];
  }
  const std::array<Complex, 9>& entries() const { return m_; }

  Unitary3 adjoint() const;
  Unitary3 transpose() const;
  Complex determinant() const;

  // Multiplies every entry by exp(i*phase); stays unitary.
  Unitary3 with_global_phase(double phase) const;

 private:
  std::array<Complex, 9> m_;
};

// Matrix product a*b (apply b first, then a).
Unitary3 mat_mul(const Unitary3& a, const Unitary3& b);
Unitary3 operator*(const Unitary3& a, const Unitary3& b);

// Matrix-vector action.
StateVector apply(const Unitary3& u, const StateVector& v);
StateVector operator*(const Unitary3& u, const StateVector& v);

double frobenius_distance(const Unitary3& a, const Unitary3& b);
bool is_special_unitary(const Unitary3& u, double tolerance);

// Haar-distributed special unitary: orthonormalizes a complex Gaussian
// matrix (Gram-Schmidt phase convention), then removes the residual
// determinant phase. A fixed seed reproduces the same matrix bitwise.
Unitary3 random_su3(std::uint64_t seed);

}  // namespace triphase
