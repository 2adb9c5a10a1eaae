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

#include "qdel/qop.hpp"

#include <algorithm>
#include <cstdlib>

namespace qdel::qop {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kJacobiTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

// 2x2 Pauli matrices, row-major.
const std::array<std::array<Complex, 4>, 4>& pauli2() {
  static const std::array<std::array<Complex, 4>, 4> p = {{
      {{{1, 0}, {0, 0}, {0, 0}, {1, 0}}},    // I
      {{{0, 0}, {1, 0}, {1, 0}, {0, 0}}},    // sx
      {{{0, 0}, {0, -1}, {0, 1}, {0, 0}}},   // sy
      {{{1, 0}, {0, 0}, {0, 0}, {-1, 0}}},   // sz
  }};
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix4
// ---------------------------------------------------------------------------

ComplexMatrix4 ComplexMatrix4::identity() {
  ComplexMatrix4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix4 ComplexMatrix4::operator+(const ComplexMatrix4& o) const {
  ComplexMatrix4 r = *this;
  r += o;
  return r;
}

ComplexMatrix4 ComplexMatrix4::operator-(const ComplexMatrix4& o) const {
  ComplexMatrix4 r = *this;
  r -= o;
  return r;
}

ComplexMatrix4& ComplexMatrix4::operator+=(const ComplexMatrix4& o) {
  for (int i = 0; i < 16; ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix4& ComplexMatrix4::operator-=(const ComplexMatrix4& o) {
  for (int i = 0; i < 16; ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix4 ComplexMatrix4::operator*(const ComplexMatrix4& o) const {
  ComplexMatrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const Complex aik = (*this)(i, k);
      for (int j = 0; j < 4; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

ComplexMatrix4 ComplexMatrix4::scaled(Complex s) const {
  ComplexMatrix4 r = *this;
  for (auto& v : r.a_) v *= s;
  return r;
}

ComplexMatrix4 ComplexMatrix4::adjoint() const {
  ComplexMatrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

Complex ComplexMatrix4::trace() const {
  return a_[0] + a_[5] + a_[10] + a_[15];
}

double ComplexMatrix4::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix4::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

// ---------------------------------------------------------------------------
// PauliOp / PureState2Q
// ---------------------------------------------------------------------------

PauliOp PauliOp::identity_state() {
  PauliOp op;
  op.c[0][0] = 1.0;
  return op;
}

PauliOp PauliOp::product_state(const BlochVector& m, const BlochVector& n) {
  const std::array<double, 4> mv = {1.0, m.x, m.y, m.z};
  const std::array<double, 4> nv = {1.0, n.x, n.y, n.z};
  PauliOp op;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) op.c[mu][nu] = mv[mu] * nv[nu];
  return op;
}

PureState2Q PureState2Q::from_real(const std::array<double, 4>& a) {
  PureState2Q s;
  for (int i = 0; i < 4; ++i) s.amp[i] = a[i];
  return s;
}

double PureState2Q::norm() const {
  double s = 0.0;
  for (const auto& v : amp) s += std::norm(v);
  return std::sqrt(s);
}

ComplexMatrix4 PureState2Q::projector() const {
  ComplexMatrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = amp[i] * std::conj(amp[j]);
  return m;
}

// ---------------------------------------------------------------------------
// Basis conversion
// ---------------------------------------------------------------------------

ComplexMatrix4 pauli_tensor(int mu, int nu) {
  const auto& p = pauli2();
  ComplexMatrix4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          m(2 * i + k, 2 * j + l) = p[mu][2 * i + j] * p[nu][2 * k + l];
  return m;
}

ComplexMatrix4 to_matrix(const PauliOp& op) {
  ComplexMatrix4 m;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const double c = op.c[mu][nu];
      if (c == 0.0) continue;
      m += pauli_tensor(mu, nu).scaled(c);
    }
  return m.scaled(0.25);
}

PauliOp from_matrix(const ComplexMatrix4& m) {
  if (m.hermiticity_defect() > kHermitianTol)
    throw NonHermitianInput("from_matrix: input is not Hermitian");
  PauliOp op;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      op.c[mu][nu] = std::real((m * pauli_tensor(mu, nu)).trace());
  return op;
}

SingleQubitOp partial_trace(const PauliOp& op, Subsystem keep) {
  // Tr over one factor kills every term with a non-identity Pauli there,
  // so only the c[mu][0] (resp. c[0][nu]) line survives.
  if (keep == Subsystem::first)
    return {op.c[0][0], op.c[1][0], op.c[2][0], op.c[3][0]};
  return {op.c[0][0], op.c[0][1], op.c[0][2], op.c[0][3]};
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver
// ---------------------------------------------------------------------------

namespace {

// Cyclic Jacobi on a real symmetric n x n matrix; eigenvectors accumulate in
// the columns of v.
template <int N>
void jacobi_real_symmetric(std::array<std::array<double, N>, N>& a,
                           std::array<std::array<double, N>, N>& v) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) v[i][j] = (i == j) ? 1.0 : 0.0;

  double scale = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) scale += a[i][j] * a[i][j];
  const double tol = kJacobiTol * std::max(1.0, std::sqrt(scale));

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) off += 2.0 * a[i][j] * a[i][j];
    if (std::sqrt(off) <= tol) return;

    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = a[p][p];
        const double aqq = a[q][q];
        const double apq = a[p][q];
        a[p][p] = app - t * apq;
        a[q][q] = aqq + t * apq;
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for (int k = 0; k < N; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = akp - s * (akq + tau * akp);
          a[p][k] = a[k][p];
          a[k][q] = akq + s * (akp - tau * akq);
          a[q][k] = a[k][q];
        }
        for (int k = 0; k < N; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = vkp - s * (vkq + tau * vkp);
          v[k][q] = vkq + s * (vkp - tau * vkq);
        }
      }
    }
  }
  throw NoConvergence("eig_hermitian: Jacobi sweep cap exceeded");
}

struct Embedded8 {
  std::array<double, 8> values{};                    // descending
  std::array<std::array<double, 8>, 8> vectors{};    // columns pair with values
};

// Diagonalize the 8x8 real-symmetric embedding [[X, -Y], [Y, X]] of a
// Hermitian A = X + iY. Each eigenvalue of A appears twice; the embedded
// eigenvector (u; v) maps to the complex eigenvector u + iv.
Embedded8 eig_embedded(const ComplexMatrix4& m) {
  if (m.hermiticity_defect() > kHermitianTol)
    throw NonHermitianInput("eig_hermitian: input is not Hermitian");

  std::array<std::array<double, 8>, 8> b{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double re = 0.5 * (std::real(m(i, j)) + std::real(m(j, i)));
      const double im = 0.5 * (std::imag(m(i, j)) - std::imag(m(j, i)));
      b[i][j] = re;
      b[i + 4][j + 4] = re;
      b[i][j + 4] = -im;
      b[i + 4][j] = im;
    }

  std::array<std::array<double, 8>, 8> v{};
  jacobi_real_symmetric<8>(b, v);

  std::array<int, 8> order = {0, 1, 2, 3, 4, 5, 6, 7};
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return b[x][x] > b[y][y]; });

  Embedded8 out;
  for (int k = 0; k < 8; ++k) {
    out.values[k] = b[order[k]][order[k]];
    for (int i = 0; i < 8; ++i) out.vectors[i][k] = v[i][order[k]];
  }
  return out;
}

}  // namespace

EigenSystem eig_hermitian(const ComplexMatrix4& m) {
  const Embedded8 e = eig_embedded(m);
  EigenSystem sys;
  for (int k = 0; k < 4; ++k) {
    const int src = 2 * k;  // every eigenvalue is doubled in the embedding
    sys.values[k] = e.values[src];
    for (int i = 0; i < 4; ++i)
      sys.vectors[k][i] = Complex(e.vectors[i][src], e.vectors[i + 4][src]);
  }
  return sys;
}

std::array<double, 4> eigenvalues(const ComplexMatrix4& m) {
  return eig_hermitian(m).values;
}

// ---------------------------------------------------------------------------
// Fidelity and distance
// ---------------------------------------------------------------------------

namespace {

double clamp_unit(double f) {
  if (f < 0.0 && f > -1e-12) return 0.0;
  if (f > 1.0 && f < 1.0 + 1e-12) return 1.0;
  return f;
}

}  // namespace

double fidelity_pure(const PureState2Q& psi, const ComplexMatrix4& rho) {
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw NotNormalized("fidelity_pure: state vector is not normalized");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-9)
    throw NotNormalized("fidelity_pure: density operator trace is not 1");
  Complex f = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      f += std::conj(psi.amp[i]) * rho(i, j) * psi.amp[j];
  return clamp_unit(std::real(f));
}

double fidelity_pure(const BlochVector& psi, const SingleQubitOp& rho) {
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw NotNormalized("fidelity_pure: Bloch vector is not unit length");
  if (std::abs(rho.c0 - 1.0) > 1e-9)
    throw NotNormalized("fidelity_pure: single-qubit operator trace is not 1");
  return clamp_unit(0.5 * (1.0 + psi.x * rho.x + psi.y * rho.y + psi.z * rho.z));
}

double trace_distance(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  const auto lam = eigenvalues(a - b);
  double s = 0.0;
  for (double l : lam) s += std::abs(l);
  return 0.5 * s;
}

ComplexMatrix4 nonnegative_eigenprojector(const ComplexMatrix4& m) {
  // Sum b_k b_k^T over embedded eigenvectors with lambda_k >= 0; the result
  // commutes with the complex structure, so its (E, F) blocks give the
  // complex projector E + iF. Zero eigenvalues go to the projector.
  const Embedded8 e = eig_embedded(m);
  std::array<std::array<double, 8>, 8> pr{};
  for (int k = 0; k < 8; ++k) {
    if (e.values[k] < 0.0) continue;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        pr[i][j] += e.vectors[i][k] * e.vectors[j][k];
  }
  ComplexMatrix4 p;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p(i, j) = Complex(pr[i][j], pr[i + 4][j]);
  // Symmetrize away the residual asymmetry of the embedding.
  return (p + p.adjoint()).scaled(0.5);
}

}  // namespace qdel::qop
