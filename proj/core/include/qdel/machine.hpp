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

#include "qdel/qop.hpp"

// The covariant deletion-machine model: free parameters, canonical and
// rotated two-qubit outputs, pure outputs for the invalid (antisymmetric)
// preparations, and the two fidelities.
//
// The machine is universal: rotating the input Bloch vector rotates the
// output by the same single-qubit unitary on both factors. The canonical
// frame puts the input along +x; the blank state is the pure state along the
// same covariant axis, so a single scalar eta2 carries its shrinking factor.
namespace qdel::machine {

/// Free parameters. t_yy = t_zz and t_yz = -t_zy are implied by covariance
/// and never stored. p and q are 0-indexed here: p[0] is the amplitude
/// called p1 in the parameter file.
struct MachineParams {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double t_xx = 0.0;
  double t_zz = 0.0;
  double t_zy = 0.0;
  std::array<double, 8> p{};
  std::array<double, 8> q{};

  /// The known optimum of the model: eta1 = 1, everything else in the Pauli
  /// block zero, all four pure outputs |00>.
  static MachineParams optimal_config();
};

/// Throws InvalidParams unless every entry lies in [-1, 1] and each of the
/// four amplitude blocks (p1..p4, p5..p8, q1..q4, q5..q8) has unit norm
/// within 1e-9.
void validate(const MachineParams& params);
bool is_valid(const MachineParams& params) noexcept;

/// The four Bloch directions the signaling argument uses.
enum class InputDirection { plus_z, minus_z, plus_x, minus_x };

qop::BlochVector direction_vector(InputDirection dir);
const char* direction_name(InputDirection dir);

inline constexpr std::array<InputDirection, 4> kAllDirections = {
    InputDirection::plus_z, InputDirection::minus_z, InputDirection::plus_x,
    InputDirection::minus_x};

/// Which antisymmetric preparation a pure output belongs to.
/// phi <- up (x) down, gamma <- down (x) up,
/// phi_prime <- left (x) right, gamma_prime <- right (x) left.
enum class InvalidInput { phi, gamma, phi_prime, gamma_prime };

struct FidelityPair {
  double f_p = 0.0;  // preservation
  double f_d = 0.0;  // deletion
};

/// Output state in the canonical +x frame:
///   (1/4) (I + eta1 sx(x)I + eta2 I(x)sx + t_xx sx(x)sx
///          + t_zz (sz(x)sz + sy(x)sy) + t_zy (sz(x)sy - sy(x)sz)).
/// Throws InvalidParams.
qop::PauliOp canonical_output(const MachineParams& params);

/// Output for an input along `dir`: the canonical output conjugated by
/// U (x) U where U maps +x to `dir` (I, sz, H, sx*H respectively). The
/// rotation acts exactly on the Pauli coefficients (signed permutation).
qop::PauliOp frame_output(const MachineParams& params, InputDirection dir);

/// Pure output for an invalid preparation: phi = sum p_i |i>, i = 1..4;
/// phi' = sum p_i |i-4>, i = 5..8; likewise gamma from q. Both index blocks
/// address the same computational product basis.
qop::PureState2Q invalid_output(const MachineParams& params, InvalidInput which);

/// Closed form: f_p = (1 + eta1)/2, f_d = (1 + eta2)/2.
FidelityPair fidelities(const MachineParams& params);

/// Frobenius norm of [exp(i a m.sigma) (x) exp(i a m.sigma), rho_out(m)] for
/// the frame along `dir`. Zero (<= 1e-10) for every valid parameter set; kept
/// as a regression check on the covariant parametrization.
double covariance_residual(const MachineParams& params, double alpha,
                           InputDirection dir);

/// Same commutator residual for an arbitrary two-qubit operator.
double rotation_commutator_norm(const qop::PauliOp& op, InputDirection axis,
                                double alpha);

}  // namespace qdel::machine
