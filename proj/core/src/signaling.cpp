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

#include "qdel/signaling.hpp"

#include <algorithm>
#include <cmath>

#include "qdel/rng.hpp"

namespace qdel::signaling {

using machine::InputDirection;
using machine::InvalidInput;
using machine::MachineParams;
using qop::Complex;
using qop::ComplexMatrix4;

namespace {

constexpr std::uint64_t kBlockTrials = 8192;

double real_trace_product(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  Complex s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += a(i, j) * b(j, i);
  return std::real(s);
}

}  // namespace

EnsemblePair bob_ensembles(const MachineParams& params) {
  const auto out = [&](InputDirection d) {
    return qop::to_matrix(machine::frame_output(params, d));
  };
  const auto pure = [&](InvalidInput w) {
    return machine::invalid_output(params, w).projector();
  };
  EnsemblePair e;
  e.rho_z = (out(InputDirection::plus_z) + pure(InvalidInput::phi) +
             pure(InvalidInput::gamma) + out(InputDirection::minus_z))
                .scaled(0.25);
  e.rho_x = (out(InputDirection::plus_x) + pure(InvalidInput::phi_prime) +
             pure(InvalidInput::gamma_prime) + out(InputDirection::minus_x))
                .scaled(0.25);
  return e;
}

double helstrom_success(const EnsemblePair& ensembles) {
  return 0.5 + 0.5 * qop::trace_distance(ensembles.rho_z, ensembles.rho_x);
}

double helstrom_success(const MachineParams& params) {
  return helstrom_success(bob_ensembles(params));
}

GameStats simulate_game(const MachineParams& params, std::uint64_t trials,
                        std::uint64_t seed) {
  if (trials < 1) throw InvalidParams("simulate_game: trials must be >= 1");
  if (trials > (std::uint64_t{1} << 62))
    throw TrialsOverflow("simulate_game: trial count exceeds the counter range");

  const EnsemblePair ens = bob_ensembles(params);
  const ComplexMatrix4 guess_z =
      qop::nonnegative_eigenprojector(ens.rho_z - ens.rho_x);

  // Conditional states per basis, in the order (++, +-, -+, --); the two
  // antisymmetric collapses route to the pure outputs.
  const auto out = [&](InputDirection d) {
    return qop::to_matrix(machine::frame_output(params, d));
  };
  const auto pure = [&](InvalidInput w) {
    return machine::invalid_output(params, w).projector();
  };
  const ComplexMatrix4 cond[2][4] = {
      {out(InputDirection::plus_z), pure(InvalidInput::phi),
       pure(InvalidInput::gamma), out(InputDirection::minus_z)},
      {out(InputDirection::plus_x), pure(InvalidInput::gamma_prime),
       pure(InvalidInput::phi_prime), out(InputDirection::minus_x)},
  };
  // P(Bob outcome + | basis, collapse)
  double prob_plus[2][4];
  for (int b = 0; b < 2; ++b)
    for (int j = 0; j < 4; ++j)
      prob_plus[b][j] =
          std::clamp(real_trace_product(guess_z, cond[b][j]), 0.0, 1.0);

  std::uint64_t successes = 0;
  const std::uint64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  for (std::uint64_t blk = 0; blk < blocks; ++blk) {
    // Independent stream per block; block layout is fixed by the trial
    // count alone, so partitioning across workers cannot change the tally.
    SplitMix64 mix{seed};
    mix.state ^= 0x6A09E667F3BCC909ULL * (blk + 1);
    Xoshiro256StarStar rng(mix.next());
    const std::uint64_t lo = blk * kBlockTrials;
    const std::uint64_t hi = std::min(trials, lo + kBlockTrials);
    for (std::uint64_t i = lo; i < hi; ++i) {
      const int basis = rng.uniform01() < 0.5 ? 0 : 1;  // 0 = z, 1 = x
      const int collapse = std::min(3, static_cast<int>(rng.uniform01() * 4.0));
      const bool outcome_plus = rng.uniform01() < prob_plus[basis][collapse];
      const bool guessed_z = outcome_plus;
      if (guessed_z == (basis == 0)) ++successes;
    }
  }

  GameStats stats;
  stats.trials = trials;
  stats.successes = successes;
  stats.empirical_rate = static_cast<double>(successes) / static_cast<double>(trials);
  stats.analytic_rate = helstrom_success(ens);
  const double var = stats.analytic_rate * (1.0 - stats.analytic_rate);
  stats.z_score = var > 0.0
                      ? (stats.empirical_rate - stats.analytic_rate) /
                            std::sqrt(var / static_cast<double>(trials))
                      : 0.0;
  return stats;
}

}  // namespace qdel::signaling
