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

#include "qdel/machine.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace qdel::machine {

namespace {

constexpr double kBoundTol = 1e-12;
constexpr double kNormTol = 1e-9;

double block_norm_sq(const std::array<double, 8>& a, int offset) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += a[offset + i] * a[offset + i];
  return s;
}

// Single-qubit rotation taking +x to each direction, as its exact action on
// the Pauli indices {x, y, z}: r[j][i] is the coefficient of s_j in
// U s_i U^dag. Entries are 0 or +-1, so frame rotation is exact arithmetic.
using Rot3 = std::array<std::array<int, 3>, 3>;

const Rot3& rotation_table(InputDirection dir) {
  static const Rot3 id = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};           // U = I
  static const Rot3 mx = {{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};         // U = sz
  static const Rot3 pz = {{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}}};          // U = H
  static const Rot3 mz = {{{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}}};          // U = sx H
  switch (dir) {
    case InputDirection::plus_x: return id;
    case InputDirection::minus_x: return mx;
    case InputDirection::plus_z: return pz;
    default: return mz;
  }
}

}  // namespace

MachineParams MachineParams::optimal_config() {
  MachineParams m;
  m.eta1 = 1.0;
  m.p[0] = 1.0;  // p1
  m.p[4] = 1.0;  // p5
  m.q[0] = 1.0;  // q1
  m.q[4] = 1.0;  // q5
  return m;
}

void validate(const MachineParams& params) {
  const auto check_bound = [](double v, const char* name) {
    if (!(std::abs(v) <= 1.0 + kBoundTol) || !std::isfinite(v)) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "parameter %s = %.17g outside [-1, 1]",
                    name, v);
      throw InvalidParams(buf);
    }
  };
  check_bound(params.eta1, "eta1");
  check_bound(params.eta2, "eta2");
  check_bound(params.t_xx, "txx");
  check_bound(params.t_zz, "tzz");
  check_bound(params.t_zy, "tzy");
  for (int i = 0; i < 8; ++i) {
    char name[4] = {'p', static_cast<char>('1' + i), 0, 0};
    check_bound(params.p[i], name);
    name[0] = 'q';
    check_bound(params.q[i], name);
  }
  const std::array<double, 4> norms = {
      block_norm_sq(params.p, 0), block_norm_sq(params.p, 4),
      block_norm_sq(params.q, 0), block_norm_sq(params.q, 4)};
  static const char* const kBlocks[4] = {"p1..p4", "p5..p8", "q1..q4", "q5..q8"};
  for (int b = 0; b < 4; ++b) {
    if (std::abs(norms[b] - 1.0) > kNormTol) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "amplitude block %s has squared norm %.12g, expected 1",
                    kBlocks[b], norms[b]);
      throw InvalidParams(buf);
    }
  }
}

bool is_valid(const MachineParams& params) noexcept {
  try {
    validate(params);
    return true;
  } catch (const InvalidParams&) {
    return false;
  }
}

qop::BlochVector direction_vector(InputDirection dir) {
  switch (dir) {
    case InputDirection::plus_z: return {0, 0, 1};
    case InputDirection::minus_z: return {0, 0, -1};
    case InputDirection::plus_x: return {1, 0, 0};
    default: return {-1, 0, 0};
  }
}

const char* direction_name(InputDirection dir) {
  switch (dir) {
    case InputDirection::plus_z: return "+z";
    case InputDirection::minus_z: return "-z";
    case InputDirection::plus_x: return "+x";
    default: return "-x";
  }
}

qop::PauliOp canonical_output(const MachineParams& params) {
  validate(params);
  qop::PauliOp op;
  op.c[0][0] = 1.0;
  op.c[1][0] = params.eta1;
  op.c[0][1] = params.eta2;
  op.c[1][1] = params.t_xx;
  op.c[2][2] = params.t_zz;
  op.c[3][3] = params.t_zz;
  op.c[3][2] = params.t_zy;
  op.c[2][3] = -params.t_zy;
  return op;
}

qop::PauliOp frame_output(const MachineParams& params, InputDirection dir) {
  const qop::PauliOp canon = canonical_output(params);
  if (dir == InputDirection::plus_x) return canon;
  const Rot3& r = rotation_table(dir);
  // c' = R c R^T with R = 1 (+) r acting on the Pauli indices of each factor.
  qop::PauliOp out;
  out.c[0][0] = canon.c[0][0];
  for (int i = 0; i < 3; ++i) {
    double row = 0.0, col = 0.0;
    for (int k = 0; k < 3; ++k) {
      row += r[i][k] * canon.c[k + 1][0];
      col += r[i][k] * canon.c[0][k + 1];
    }
    out.c[i + 1][0] = row;
    out.c[0][i + 1] = col;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          s += r[i][k] * r[j][l] * canon.c[k + 1][l + 1];
      out.c[i + 1][j + 1] = s;
    }
  return out;
}

qop::PureState2Q invalid_output(const MachineParams& params, InvalidInput which) {
  validate(params);
  const std::array<double, 8>* src = nullptr;
  int offset = 0;
  switch (which) {
    case InvalidInput::phi: src = &params.p; offset = 0; break;
    case InvalidInput::phi_prime: src = &params.p; offset = 4; break;
    case InvalidInput::gamma: src = &params.q; offset = 0; break;
    case InvalidInput::gamma_prime: src = &params.q; offset = 4; break;
  }
  return qop::PureState2Q::from_real(
      {(*src)[offset], (*src)[offset + 1], (*src)[offset + 2], (*src)[offset + 3]});
}

FidelityPair fidelities(const MachineParams& params) {
  validate(params);
  return {0.5 * (1.0 + params.eta1), 0.5 * (1.0 + params.eta2)};
}

double rotation_commutator_norm(const qop::PauliOp& op, InputDirection axis,
                                double alpha) {
  const qop::BlochVector m = direction_vector(axis);
  // U = cos(a) I + i sin(a) m.sigma for the unit vector m, written out as 2x2.
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  const std::array<std::array<qop::Complex, 2>, 2> u = {{
      {{qop::Complex(ca, sa * m.z), qop::Complex(sa * m.y, sa * m.x)}},
      {{qop::Complex(-sa * m.y, sa * m.x), qop::Complex(ca, -sa * m.z)}},
  }};
  qop::ComplexMatrix4 uu;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          uu(2 * i + k, 2 * j + l) = u[i][j] * u[k][l];
  const qop::ComplexMatrix4 rho = qop::to_matrix(op);
  return (uu * rho - rho * uu).frobenius_norm();
}

double covariance_residual(const MachineParams& params, double alpha,
                           InputDirection dir) {
  return rotation_commutator_norm(frame_output(params, dir), dir, alpha);
}

}  // namespace qdel::machine
