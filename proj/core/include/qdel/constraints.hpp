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
#include <vector>

#include "qdel/machine.hpp"

// Feasibility of a parameter set: the no-signaling constraint system (closed
// form, and at the matrix level), positivity of the output spectrum, and
// amplitude normalization.
//
// Three encodings of no-signaling are exposed side by side:
//   strict  - the full closed-form residual system r0..r10;
//   relaxed - strict minus r2, the standalone bilinear zero whose presence
//             together with r8 pins eta2 = 0;
//   matrix  - the Frobenius residual of the operator identity that equates
//             Bob's basis-averaged output ensembles directly.
// strict and relaxed are closed-form derivations; matrix is the
// derivation-independent arbiter. They are genuinely different constraint
// sets and are reported as such, never merged.
namespace qdel::constraints {

enum class ConstraintProfile { strict, relaxed, matrix };

const char* profile_name(ConstraintProfile profile);

struct NamedResidual {
  const char* name;
  double value;
};

struct ConstraintReport {
  ConstraintProfile profile = ConstraintProfile::strict;
  std::vector<NamedResidual> ns_residuals;
  double ns_norm = 0.0;         // root-sum-square of ns_residuals
  double min_eigenvalue = 0.0;  // over the +x (closed form) and +z (numeric) frames
  std::array<double, 4> normalization_residuals{};
  double tolerance = 0.0;
  bool feasible = false;  // ns_norm <= tol && min_eig >= -tol && norms <= tol
};

/// The full closed-form no-signaling system r0..r10 (the strict set), with
/// eta2 standing for the blank-direction products of the covariant frame.
/// Throws InvalidParams.
std::vector<NamedResidual> ns_residuals_closed_form(
    const machine::MachineParams& params);

/// The active residual set for a profile: strict = r0..r10, relaxed drops
/// r2, matrix = the single Frobenius residual.
std::vector<NamedResidual> ns_residuals(const machine::MachineParams& params,
                                        ConstraintProfile profile);

/// Frobenius norm of L - R with
///   L = out(+z) + |phi><phi| + |gamma><gamma| + out(-z),
///   R = out(+x) + |phi'><phi'| + |gamma'><gamma'| + out(-x).
/// Zero exactly when basis choice is operationally invisible to Bob.
double ns_residual_matrix(const machine::MachineParams& params);

/// Closed-form spectrum of the canonical output:
///   l1 = (1 + eta1 + eta2 + t_xx)/4,
///   l2 = (1 - eta1 - eta2 + t_xx)/4,
///   l3,4 = (1 - t_xx +- s)/4, s = sqrt((eta1-eta2)^2 + 4(t_zy^2 + t_zz^2)).
/// Matches the numeric eigensolver within 1e-10; sums to 1 identically.
std::array<double, 4> positivity_spectrum(const machine::MachineParams& params);

/// |sum p_{1..4}^2 - 1|, |sum p_{5..8}^2 - 1|, and likewise for q.
std::array<double, 4> normalization_residuals(
    const machine::MachineParams& params) noexcept;

/// Aggregate report at tolerance `tol` (> 0). min_eigenvalue is the minimum
/// over both the closed-form +x spectrum and the numerically diagonalized +z
/// frame, equal by covariance and both computed as a cross-check.
ConstraintReport feasibility_report(const machine::MachineParams& params,
                                    ConstraintProfile profile, double tol);

/// Deviation of the input-side basis-completeness identity from I (x) I:
/// the four z-basis product inputs and the four x-basis product inputs each
/// sum to the identity. Returns the largest Frobenius deviation.
double input_mixture_identity_residual();

}  // namespace qdel::constraints
