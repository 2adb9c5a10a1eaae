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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qdel/qop.hpp"
#include "support/test_support.hpp"

using namespace qdel;
using namespace qdel::qop;

TEST_CASE("to_matrix: identity term alone gives the maximally mixed state") {
  const ComplexMatrix4 m = to_matrix(PauliOp::identity_state());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(m(i, j) - (i == j ? Complex(0.25) : Complex(0.0))) < 1e-15);
}

TEST_CASE("to_matrix: sz (x) I term") {
  PauliOp op = PauliOp::identity_state();
  op.c[3][0] = 1.0;
  const ComplexMatrix4 m = to_matrix(op);
  const double diag[4] = {0.5, 0.5, 0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(m(i, i) - diag[i]) < 1e-15);
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(m(i, j)) < 1e-15);
  }
}

TEST_CASE("to_matrix: sx (x) I at full weight reproduces the optimum output") {
  PauliOp op = PauliOp::identity_state();
  op.c[1][0] = 1.0;
  const ComplexMatrix4 m = to_matrix(op);
  // (1/4) [[1,0,1,0],[0,1,0,1],[1,0,1,0],[0,1,0,1]]
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expect = (i == j || std::abs(i - j) == 2) ? 0.25 : 0.0;
      CHECK(std::abs(m(i, j) - expect) < 1e-15);
    }
}

TEST_CASE("from_matrix inverts to_matrix on random coefficient arrays") {
  Xoshiro256StarStar rng(0xC0FFEE);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const PauliOp op = test::random_pauli_op(rng);
    const PauliOp back = from_matrix(to_matrix(op));
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        worst = std::max(worst, std::abs(back.c[mu][nu] - op.c[mu][nu]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("from_matrix: diag(1/2, 1/2, 0, 0)") {
  ComplexMatrix4 m;
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  const PauliOp op = from_matrix(m);
  CHECK(op.c[0][0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(op.c[3][0] == doctest::Approx(1.0).epsilon(1e-14));
  double off = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      if (!(mu == 0 && nu == 0) && !(mu == 3 && nu == 0))
        off = std::max(off, std::abs(op.c[mu][nu]));
  CHECK(off < 1e-14);
}

TEST_CASE("from_matrix: canonical output matrix at (0.5, 0.3, 0, 0, 0)") {
  // Hand-substituted machine output: diag 1/4, eta1 on the (0,2) skew
  // diagonal, eta2 on the (0,1) one.
  ComplexMatrix4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = 0.25;
  const double e1 = 0.5 / 4.0, e2 = 0.3 / 4.0;
  m(0, 2) = m(2, 0) = m(1, 3) = m(3, 1) = e1;
  m(0, 1) = m(1, 0) = m(2, 3) = m(3, 2) = e2;
  const PauliOp op = from_matrix(m);
  CHECK(op.c[1][0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(op.c[0][1] == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(op.c[0][0] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("from_matrix rejects non-Hermitian input") {
  ComplexMatrix4 m;
  m(0, 1) = Complex(0.0, 1.0);
  m(1, 0) = Complex(0.0, 1.0);  // conj would be -i
  CHECK_THROWS_AS((void)from_matrix(m), NonHermitianInput);
}

TEST_CASE("partial_trace of a product state returns each factor") {
  const BlochVector m{0.3, -0.5, 0.2};
  const BlochVector n{-0.1, 0.7, 0.4};
  const PauliOp op = PauliOp::product_state(m, n);
  const auto r1 = partial_trace(op, Subsystem::first).bloch();
  const auto r2 = partial_trace(op, Subsystem::second).bloch();
  CHECK(r1.x == doctest::Approx(m.x));
  CHECK(r1.y == doctest::Approx(m.y));
  CHECK(r1.z == doctest::Approx(m.z));
  CHECK(r2.x == doctest::Approx(n.x));
  CHECK(r2.y == doctest::Approx(n.y));
  CHECK(r2.z == doctest::Approx(n.z));
}

TEST_CASE("partial_trace agrees with the dense-matrix reduction") {
  // Independent route: trace out explicitly on matrix entries, then read the
  // Bloch vector from the reduced 2x2.
  Xoshiro256StarStar rng(0xFACADE);
  for (int n = 0; n < 100; ++n) {
    PauliOp op = test::random_pauli_op(rng);
    op.c[0][0] = 1.0;
    const ComplexMatrix4 m = to_matrix(op);
    Complex red1[2][2] = {}, red2[2][2] = {};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          red1[i][j] += m(2 * i + k, 2 * j + k);  // trace out qubit 2
          red2[i][j] += m(2 * k + i, 2 * k + j);  // trace out qubit 1
        }
    const auto b1 = partial_trace(op, Subsystem::first);
    const auto b2 = partial_trace(op, Subsystem::second);
    CHECK(std::abs(2.0 * std::real(red1[0][1]) - b1.x) < 1e-12);
    CHECK(std::abs(-2.0 * std::imag(red1[0][1]) - b1.y) < 1e-12);
    CHECK(std::abs(std::real(red1[0][0] - red1[1][1]) - b1.z) < 1e-12);
    CHECK(std::abs(2.0 * std::real(red2[0][1]) - b2.x) < 1e-12);
    CHECK(std::abs(-2.0 * std::imag(red2[0][1]) - b2.y) < 1e-12);
    CHECK(std::abs(std::real(red2[0][0] - red2[1][1]) - b2.z) < 1e-12);
  }
}

TEST_CASE("eig_hermitian: diagonal matrix") {
  ComplexMatrix4 m;
  m(0, 0) = 0.4;
  m(1, 1) = 0.3;
  m(2, 2) = 0.2;
  m(3, 3) = 0.1;
  const auto lam = eigenvalues(m);
  CHECK(lam[0] == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(lam[1] == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(lam[2] == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(lam[3] == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("eig_hermitian: Bell projector is rank one") {
  PureState2Q bell;
  bell.amp = {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
  const auto lam = eigenvalues(bell.projector());
  CHECK(lam[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 1; k < 4; ++k) CHECK(std::abs(lam[k]) < 1e-12);
}

TEST_CASE("eig_hermitian: machine output at (0.5, 0.3, 0, 0, 0)") {
  PauliOp op = PauliOp::identity_state();
  op.c[1][0] = 0.5;
  op.c[0][1] = 0.3;
  const auto lam = eigenvalues(to_matrix(op));
  CHECK(lam[0] == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(lam[1] == doctest::Approx(0.30).epsilon(1e-12));
  CHECK(lam[2] == doctest::Approx(0.20).epsilon(1e-12));
  CHECK(lam[3] == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("eig_hermitian: eigenvalue sum, residuals, spectrum invariance") {
  Xoshiro256StarStar rng(0xBADA55);
  const ComplexMatrix4 units[3] = {test::hadamard_pair(), test::sz_pair(),
                                   test::swap_gate()};
  for (int n = 0; n < 200; ++n) {
    ComplexMatrix4 m = to_matrix(test::random_pauli_op(rng));
    const EigenSystem sys = eig_hermitian(m);

    const double tr = std::real(m.trace());
    double sum = 0.0;
    for (double l : sys.values) sum += l;
    CHECK(std::abs(sum - tr) < 1e-12);

    for (int k = 0; k < 4; ++k) {
      double resid = 0.0;
      for (int i = 0; i < 4; ++i) {
        Complex mv = 0.0;
        for (int j = 0; j < 4; ++j) mv += m(i, j) * sys.vectors[k][j];
        resid = std::max(resid, std::abs(mv - sys.values[k] * sys.vectors[k][i]));
      }
      CHECK(resid < 1e-10);
    }

    for (const auto& u : units) {
      const auto lam2 = eigenvalues(test::conjugate(u, m));
      for (int k = 0; k < 4; ++k)
        CHECK(std::abs(lam2[k] - sys.values[k]) < 1e-10);
    }
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  ComplexMatrix4 m;
  m(0, 1) = 1.0;  // m(1,0) stays 0
  CHECK_THROWS_AS((void)eig_hermitian(m), NonHermitianInput);
}

TEST_CASE("fidelity_pure: computational basis state") {
  PureState2Q psi;
  psi.amp = {1.0, 0.0, 0.0, 0.0};
  CHECK(fidelity_pure(psi, psi.projector()) == doctest::Approx(1.0));
}

TEST_CASE("fidelity_pure on single qubits") {
  const BlochVector plus_x{1, 0, 0};
  CHECK(fidelity_pure(plus_x, SingleQubitOp{1, 0, 0, 0}) == doctest::Approx(0.5));
  CHECK(fidelity_pure(plus_x, SingleQubitOp{1, 0.6, 0, 0}) == doctest::Approx(0.8));
}

TEST_CASE("fidelity_pure rejects unnormalized input") {
  PureState2Q psi;
  psi.amp = {0.5, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS((void)fidelity_pure(psi, ComplexMatrix4::identity().scaled(0.25)),
                  NotNormalized);
  CHECK_THROWS_AS((void)fidelity_pure(BlochVector{0.5, 0, 0}, SingleQubitOp{1, 0, 0, 0}),
                  NotNormalized);
}

TEST_CASE("fidelity_pure stays in [0,1] and reaches 1 only on the state itself") {
  Xoshiro256StarStar rng(0x5EED);
  for (int n = 0; n < 200; ++n) {
    // random pure rho, random pure psi
    std::array<double, 4> a{}, b{};
    double na = 0.0, nb = 0.0;
    for (int i = 0; i < 4; ++i) {
      a[i] = rng.gaussian();
      b[i] = rng.gaussian();
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    for (int i = 0; i < 4; ++i) {
      a[i] /= std::sqrt(na);
      b[i] /= std::sqrt(nb);
    }
    const auto psi = PureState2Q::from_real(a);
    const auto rho = PureState2Q::from_real(b);
    const double f = fidelity_pure(psi, rho.projector());
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(fidelity_pure(psi, psi.projector()) == doctest::Approx(1.0).epsilon(1e-12));
    double overlap = 0.0;
    for (int i = 0; i < 4; ++i) overlap += a[i] * b[i];
    if (f > 1.0 - 1e-9) CHECK(std::abs(overlap) > 1.0 - 1e-4);
  }
}

TEST_CASE("trace_distance: coincident, orthogonal and mixed examples") {
  const ComplexMatrix4 p00 = test::basis_projector(0);
  const ComplexMatrix4 p01 = test::basis_projector(1);
  CHECK(trace_distance(p00, p00) == doctest::Approx(0.0));
  CHECK(trace_distance(p00, p01) == doctest::Approx(1.0));

  const ComplexMatrix4 half = ComplexMatrix4::identity().scaled(0.5);
  const ComplexMatrix4 a = (half + p00.scaled(2.0)).scaled(0.25);
  const ComplexMatrix4 b = (half + p00 + p01).scaled(0.25);
  CHECK(trace_distance(a, b) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("trace_distance: symmetry, positivity, triangle inequality") {
  Xoshiro256StarStar rng(0x7A1);
  for (int n = 0; n < 100; ++n) {
    PauliOp x = test::random_pauli_op(rng), y = test::random_pauli_op(rng),
            z = test::random_pauli_op(rng);
    x.c[0][0] = y.c[0][0] = z.c[0][0] = 1.0;
    const ComplexMatrix4 a = to_matrix(x), b = to_matrix(y), c = to_matrix(z);
    const double ab = trace_distance(a, b);
    const double ba = trace_distance(b, a);
    const double ac = trace_distance(a, c);
    const double cb = trace_distance(c, b);
    CHECK(std::abs(ab - ba) < 1e-10);
    CHECK(ab >= 0.0);
    CHECK(ab <= ac + cb + 1e-10);
  }
}

TEST_CASE("nonnegative_eigenprojector is an orthogonal projector") {
  Xoshiro256StarStar rng(0xAB1DE);
  for (int n = 0; n < 50; ++n) {
    const ComplexMatrix4 m =
        to_matrix(test::random_pauli_op(rng)) - to_matrix(test::random_pauli_op(rng));
    const ComplexMatrix4 p = nonnegative_eigenprojector(m);
    CHECK(test::max_abs_diff(p * p, p) < 1e-10);
    CHECK(p.hermiticity_defect() < 1e-10);
    // Tr(P m) equals the sum of the non-negative eigenvalues.
    double pos = 0.0;
    for (double l : eigenvalues(m)) pos += std::max(l, 0.0);
    CHECK(std::abs(std::real((p * m).trace()) - pos) < 1e-9);
  }
}
