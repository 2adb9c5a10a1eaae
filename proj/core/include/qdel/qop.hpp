// Copyright 2026 the qdel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "qdel/errors.hpp"

// Two-qubit operator algebra over the Pauli tensor basis: basis conversion,
// partial trace, Hermitian spectra, fidelity and trace distance.
//
// Conventions, fixed throughout the library:
//   * Pauli index order {I, sx, sy, sz} with the standard matrix forms.
//   * Computational basis order |00>, |01>, |10>, |11>; the first tensor
//     factor is qubit 1.
//   * PauliOp stores the unnormalized expectation c[mu][nu] =
//     Tr(rho * s_mu (x) s_nu), so a state has c[0][0] = 1.
namespace qdel::qop {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Value types
// ---------------------------------------------------------------------------

/// Real 3-vector m with rho = (I + m.sigma)/2; |m| = 1 for pure states.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
};

/// Dense 4x4 complex matrix, value semantics. Row-major storage.
class ComplexMatrix4 {
 public:
  ComplexMatrix4() = default;

  static ComplexMatrix4 identity();

  Complex& operator()(int i, int j) { return a_[4 * i + j]; }
  const Complex& operator()(int i, int j) const { return a_[4 * i + j]; }

  ComplexMatrix4 operator+(const ComplexMatrix4& o) const;
  ComplexMatrix4 operator-(const ComplexMatrix4& o) const;
  ComplexMatrix4 operator*(const ComplexMatrix4& o) const;  // matrix product
  ComplexMatrix4& operator+=(const ComplexMatrix4& o);
  ComplexMatrix4& operator-=(const ComplexMatrix4& o);

  ComplexMatrix4 scaled(Complex s) const;
  ComplexMatrix4 adjoint() const;

  Complex trace() const;
  double frobenius_norm() const;
  /// max_ij |a(i,j) - conj(a(j,i))|
  double hermiticity_defect() const;

 private:
  std::array<Complex, 16> a_{};
};

/// Two-qubit Hermitian operator as real coefficients over the Pauli basis:
/// op = (1/4) * sum c[mu][nu] * s_mu (x) s_nu.
struct PauliOp {
  std::array<std::array<double, 4>, 4> c{};

  /// The maximally mixed state I (x) I / 4 (c[0][0] = 1, rest 0).
  static PauliOp identity_state();
  /// Product state rho(m) (x) rho(n): c[mu][nu] = m_mu * n_nu with m_0 = n_0 = 1.
  static PauliOp product_state(const BlochVector& m, const BlochVector& n);
};

/// Pure two-qubit state, amplitudes in the computational product basis.
struct PureState2Q {
  std::array<Complex, 4> amp{};

  static PureState2Q from_real(const std::array<double, 4>& a);

  double norm() const;
  ComplexMatrix4 projector() const;  // |psi><psi|
};

/// Single-qubit operator as (c0, x, y, z): op = (c0*I + x*sx + y*sy + z*sz)/2.
struct SingleQubitOp {
  double c0 = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  /// Bloch vector of the normalized state, (x, y, z)/c0. Requires c0 != 0.
  BlochVector bloch() const { return {x / c0, y / c0, z / c0}; }
};

enum class Subsystem { first = 1, second = 2 };

/// Eigendecomposition of a Hermitian 4x4 matrix. values[k] pairs with
/// vectors[k]; values descending.
struct EigenSystem {
  std::array<double, 4> values{};
  std::array<std::array<Complex, 4>, 4> vectors{};
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// s_mu (x) s_nu as a dense matrix, mu, nu in 0..3.
ComplexMatrix4 pauli_tensor(int mu, int nu);

/// Dense form (1/4) * sum c[mu][nu] * s_mu (x) s_nu. Hermitian by construction.
ComplexMatrix4 to_matrix(const PauliOp& op);

/// Inverse of to_matrix: c[mu][nu] = Tr(m * s_mu (x) s_nu).
/// Throws NonHermitianInput if the Hermiticity defect exceeds 1e-10.
PauliOp from_matrix(const ComplexMatrix4& m);

/// Reduced single-qubit operator. keep = first returns (c00, c10, c20, c30),
/// keep = second returns (c00, c01, c02, c03); for a state the Bloch vector
/// of the kept qubit is the last three entries divided by c00.
SingleQubitOp partial_trace(const PauliOp& op, Subsystem keep);

/// Cyclic Jacobi eigensolver for Hermitian 4x4 matrices, run on the 8x8
/// real-symmetric embedding [[X, -Y], [Y, X]]. Off-diagonal tolerance 1e-13
/// (relative to the matrix scale), cap 100 sweeps.
/// Throws NonHermitianInput (defect > 1e-10) and NoConvergence.
EigenSystem eig_hermitian(const ComplexMatrix4& m);

/// Eigenvalues only, descending.
std::array<double, 4> eigenvalues(const ComplexMatrix4& m);

/// <psi|rho|psi>, clamped into [0,1] when within 1e-12 of a boundary.
/// Throws NotNormalized if |psi| differs from 1 by more than 1e-12 or the
/// trace of rho differs from 1 by more than 1e-9.
double fidelity_pure(const PureState2Q& psi, const ComplexMatrix4& rho);

/// Single-qubit overlap (1 + psi.bloch(rho))/2 for a pure Bloch direction psi.
double fidelity_pure(const BlochVector& psi, const SingleQubitOp& rho);

/// (1/2) * sum |eigenvalues of (a - b)|. Propagates eigensolver errors.
double trace_distance(const ComplexMatrix4& a, const ComplexMatrix4& b);

/// Orthogonal projector onto the eigenspace of m with eigenvalues >= 0
/// (zero eigenvalues included).
ComplexMatrix4 nonnegative_eigenprojector(const ComplexMatrix4& m);

}  // namespace qdel::qop
