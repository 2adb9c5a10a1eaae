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

#include "qdel/constraints.hpp"

#include <cmath>
#include <stdexcept>

namespace qdel::constraints {

using machine::InputDirection;
using machine::InvalidInput;
using machine::MachineParams;

const char* profile_name(ConstraintProfile profile) {
  switch (profile) {
    case ConstraintProfile::strict: return "strict";
    case ConstraintProfile::relaxed: return "relaxed";
    default: return "matrix";
  }
}

std::vector<NamedResidual> ns_residuals_closed_form(const MachineParams& mp) {
  machine::validate(mp);
  // 1-indexed views keep the bilinears readable against the parameter names.
  const auto& p = mp.p;
  const auto& q = mp.q;
  const auto P = [&](int i) { return p[i - 1]; };
  const auto Q = [&](int i) { return q[i - 1]; };
  const double e2 = mp.eta2;
  const double td = mp.t_xx - mp.t_zz;

  std::vector<NamedResidual> r;
  r.reserve(11);
  r.push_back({"r0_tzy", mp.t_zy});
  r.push_back({"r1_p2p4", P(2) * P(4) - P(6) * P(8) + Q(2) * Q(4) - Q(6) * Q(8)});
  r.push_back({"r2_p3p4", P(3) * P(4) - P(7) * P(8) + Q(3) * Q(4) - Q(7) * Q(8)});
  r.push_back({"r3_eta2_sq15", e2 - 2.0 * (P(5) * P(5) - P(1) * P(1) + Q(5) * Q(5) - Q(1) * Q(1))});
  r.push_back({"r4_eta2_sq26", e2 - 2.0 * (P(2) * P(2) - P(6) * P(6) + Q(2) * Q(2) - Q(6) * Q(6))});
  r.push_back({"r5_eta2_sq37", e2 - 2.0 * (P(7) * P(7) - P(3) * P(3) + Q(7) * Q(7) - Q(3) * Q(3))});
  r.push_back({"r6_eta2_sq48", e2 - 2.0 * (P(4) * P(4) - P(8) * P(8) + Q(4) * Q(4) - Q(8) * Q(8))});
  r.push_back({"r7_eta2_p1p2", e2 - 2.0 * (P(1) * P(2) - P(5) * P(6) + Q(1) * Q(2) - Q(5) * Q(6))});
  r.push_back({"r8_eta2_p3p4", e2 - 2.0 * (P(3) * P(4) - P(7) * P(8) + Q(3) * Q(4) - Q(7) * Q(8))});
  r.push_back({"r9_tdiff_p2p3", td - 2.0 * (P(2) * P(3) - P(6) * P(7) + Q(2) * Q(3) - Q(6) * Q(7))});
  r.push_back({"r10_tdiff_p1p4", td - 2.0 * (P(1) * P(4) - P(5) * P(8) + Q(1) * Q(4) - Q(5) * Q(8))});
  return r;
}

std::vector<NamedResidual> ns_residuals(const MachineParams& params,
                                        ConstraintProfile profile) {
  if (profile == ConstraintProfile::matrix)
    return {{"matrix_frobenius", ns_residual_matrix(params)}};
  auto r = ns_residuals_closed_form(params);
  if (profile == ConstraintProfile::relaxed)
    r.erase(r.begin() + 2);  // drop the standalone r2
  return r;
}

double ns_residual_matrix(const MachineParams& params) {
  machine::validate(params);
  using qop::ComplexMatrix4;
  const ComplexMatrix4 left =
      qop::to_matrix(machine::frame_output(params, InputDirection::plus_z)) +
      machine::invalid_output(params, InvalidInput::phi).projector() +
      machine::invalid_output(params, InvalidInput::gamma).projector() +
      qop::to_matrix(machine::frame_output(params, InputDirection::minus_z));
  const ComplexMatrix4 right =
      qop::to_matrix(machine::frame_output(params, InputDirection::plus_x)) +
      machine::invalid_output(params, InvalidInput::phi_prime).projector() +
      machine::invalid_output(params, InvalidInput::gamma_prime).projector() +
      qop::to_matrix(machine::frame_output(params, InputDirection::minus_x));
  return (left - right).frobenius_norm();
}

std::array<double, 4> positivity_spectrum(const MachineParams& params) {
  machine::validate(params);
  const double e1 = params.eta1;
  const double e2 = params.eta2;
  const double a = params.t_xx;
  const double s = std::sqrt((e1 - e2) * (e1 - e2) +
                             4.0 * (params.t_zy * params.t_zy +
                                    params.t_zz * params.t_zz));
  return {0.25 * (1.0 + e1 + e2 + a), 0.25 * (1.0 - e1 - e2 + a),
          0.25 * (1.0 - a + s), 0.25 * (1.0 - a - s)};
}

std::array<double, 4> normalization_residuals(const MachineParams& mp) noexcept {
  const auto block = [](const std::array<double, 8>& a, int off) {
    return std::abs(a[off] * a[off] + a[off + 1] * a[off + 1] +
                    a[off + 2] * a[off + 2] + a[off + 3] * a[off + 3] - 1.0);
  };
  return {block(mp.p, 0), block(mp.p, 4), block(mp.q, 0), block(mp.q, 4)};
}

ConstraintReport feasibility_report(const MachineParams& params,
                                    ConstraintProfile profile, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("feasibility_report: tol must be > 0");
  machine::validate(params);

  ConstraintReport rep;
  rep.profile = profile;
  rep.tolerance = tol;
  rep.ns_residuals = ns_residuals(params, profile);
  double ss = 0.0;
  for (const auto& r : rep.ns_residuals) ss += r.value * r.value;
  rep.ns_norm = std::sqrt(ss);

  // Covariance makes every frame share the canonical spectrum; evaluating
  // the +z frame numerically keeps that as a standing cross-check.
  const auto closed = positivity_spectrum(params);
  double mn = closed[0];
  for (double l : closed) mn = std::min(mn, l);
  const auto numeric = qop::eigenvalues(
      qop::to_matrix(machine::frame_output(params, InputDirection::plus_z)));
  for (double l : numeric) mn = std::min(mn, l);
  rep.min_eigenvalue = mn;

  rep.normalization_residuals = normalization_residuals(params);
  bool ok = rep.ns_norm <= tol && rep.min_eigenvalue >= -tol;
  for (double n : rep.normalization_residuals) ok = ok && n <= tol;
  rep.feasible = ok;
  return rep;
}

double input_mixture_identity_residual() {
  using qop::BlochVector;
  using qop::ComplexMatrix4;
  const BlochVector up{0, 0, 1}, dn{0, 0, -1}, rt{1, 0, 0}, lf{-1, 0, 0};
  const auto sum4 = [](BlochVector a, BlochVector b) {
    return qop::to_matrix(qop::PauliOp::product_state(a, a)) +
           qop::to_matrix(qop::PauliOp::product_state(a, b)) +
           qop::to_matrix(qop::PauliOp::product_state(b, a)) +
           qop::to_matrix(qop::PauliOp::product_state(b, b));
  };
  const ComplexMatrix4 zside = sum4(up, dn);
  const ComplexMatrix4 xside = sum4(rt, lf);
  const ComplexMatrix4 eye = ComplexMatrix4::identity();
  double worst = (zside - eye).frobenius_norm();
  worst = std::max(worst, (xside - eye).frobenius_norm());
  worst = std::max(worst, (zside - xside).frobenius_norm());
  return worst;
}

}  // namespace qdel::constraints
