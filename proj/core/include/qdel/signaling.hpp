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

#include <cstdint>

#include "qdel/machine.hpp"

// Operational no-signaling check as a two-player game. Alice and Bob share
// two maximally entangled pairs; Alice measures both of her qubits in either
// the z or the x basis, collapsing Bob's pair to one of the four product
// states of that basis, each with probability 1/4. Bob's pair runs through
// the deletion machine (symmetric products through the covariant channel,
// antisymmetric ones to their pure outputs) and Bob applies the two-outcome
// Helstrom measurement that best distinguishes his two possible average
// states. If his success rate beats 1/2, Alice's basis choice signals.
namespace qdel::signaling {

/// Bob's average output conditioned on Alice's basis.
struct EnsemblePair {
  qop::ComplexMatrix4 rho_z;
  qop::ComplexMatrix4 rho_x;
};

struct GameStats {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double empirical_rate = 0.0;
  double analytic_rate = 0.0;
  /// (empirical - analytic) in binomial standard deviations.
  double z_score = 0.0;
};

/// Thrown when the trial count exceeds what the success counter tracks.
class TrialsOverflow : public Error {
 public:
  using Error::Error;
};

/// rho_z = (out(+z) + |phi><phi| + |gamma><gamma| + out(-z)) / 4 and the
/// x-basis analogue. Equal exactly when the machine cannot signal.
EnsemblePair bob_ensembles(const machine::MachineParams& params);

/// Optimal discrimination probability 1/2 + trace_distance(rho_z, rho_x)/2.
double helstrom_success(const EnsemblePair& ensembles);
double helstrom_success(const machine::MachineParams& params);

/// Monte Carlo of the game: `trials` rounds with a fair basis coin, uniform
/// fourfold collapse, and Bob measuring the projector onto the non-negative
/// eigenspace of rho_z - rho_x (outcome + means he guesses z). Trials are
/// consumed in fixed-size blocks with per-block RNG streams, so the counts
/// do not depend on how the blocks are scheduled.
GameStats simulate_game(const machine::MachineParams& params,
                        std::uint64_t trials, std::uint64_t seed);

}  // namespace qdel::signaling
