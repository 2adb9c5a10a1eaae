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
#include <optional>
#include <vector>

#include "qdel/constraints.hpp"
#include "qdel/machine.hpp"

// Maximize F_p + F_d (or one fidelity at a fixed value of the other) over
// the machine parameters under a chosen constraint profile.
//
// Method: multi-start penalty schedule. Each restart draws a random start
// (Pauli block uniform in the box, amplitude blocks uniform on the unit
// 3-sphere), runs projected gradient ascent with backtracking line search on
// the penalized objective through a geometric penalty schedule, then polishes
// with a Gauss-Newton feasibility restoration onto the active constraint
// manifold. Restarts use independent RNG streams (seed XOR restart index) and
// merge by a deterministic rule, so serial and parallel runs agree bitwise.
namespace qdel::optimizer {

inline constexpr int kParamCount = 21;

/// Flat parameter order: eta1, eta2, txx, tzz, tzy, p1..p8, q1..q8.
using ParamVector = std::array<double, kParamCount>;

ParamVector pack(const machine::MachineParams& params);
machine::MachineParams unpack(const ParamVector& v);

enum class FixedKind { deletion, preservation };
const char* fixed_kind_name(FixedKind kind);

struct FixedFidelity {
  FixedKind kind = FixedKind::deletion;
  double value = 0.5;  // in [0.5, 1]; pins eta = 2*value - 1 exactly
};

struct PenaltySchedule {
  double initial_weight = 10.0;
  double growth = 10.0;  // > 1
  int stages = 5;
};

struct OptimizerConfig {
  constraints::ConstraintProfile profile = constraints::ConstraintProfile::strict;
  int restarts = 64;
  std::uint64_t seed = 1;
  PenaltySchedule penalty;
  int max_inner_iterations = 2000;
  double step_tolerance = 1e-10;
  double feasibility_tolerance = 1e-6;
  std::optional<FixedFidelity> fixed;
  /// Diagnostic: drop the no-signaling residuals entirely and optimize under
  /// positivity + normalization alone.
  bool ns_disabled = false;
  /// 0 = one worker per hardware thread. Results do not depend on this.
  int threads = 1;
};

struct RestartSummary {
  int index = 0;  // -1 for a warm start injected by sweep()
  double objective = 0.0;
  bool feasible = false;
};

struct OptimizationResult {
  machine::MachineParams params;
  machine::FidelityPair fidelities;
  double objective = 0.0;  // f_p + f_d of params
  constraints::ConstraintReport report;
  std::vector<RestartSummary> restarts;
  bool converged = false;
};

struct SweepPoint {
  FixedKind fixed_kind = FixedKind::deletion;
  double fixed_value = 0.0;
  double max_other = 0.0;
  double sum = 0.0;  // fixed_value + max_other
  machine::MachineParams params;
  double ns_norm = 0.0;
  double min_eigenvalue = 0.0;
  int restarts_used = 0;
  bool converged = false;
};

/// Thrown when no restart reaches feasibility; carries the best infeasible
/// diagnostics.
class NoFeasiblePoint : public Error {
 public:
  NoFeasiblePoint(const std::string& what, OptimizationResult best_infeasible)
      : Error(what), best(std::move(best_infeasible)) {}

  OptimizationResult best;
};

struct PenaltyEvaluation {
  double value = 0.0;
  ParamVector gradient{};
};

/// Penalized objective
///   (1 + (eta1 + eta2)/2) - mu * sum r_k^2 - mu * sum hinge(-l_j)^2
///   - mu * sum n_m^2
/// over the active no-signaling residuals r_k, the closed-form output
/// eigenvalues l_j and the amplitude-block normalization defects n_m, with
/// its exact analytic gradient (subgradient 0 at the s = 0 kink).
/// Requires every entry of `raw` in [-1, 1]; throws InvalidParams otherwise.
PenaltyEvaluation penalty_objective(const ParamVector& raw,
                                    const OptimizerConfig& config, double mu);

/// Clamp the Pauli block into [-1, 1] and scale each amplitude block to unit
/// norm (blocks with norm < 1e-12 reset to the first basis vector).
machine::MachineParams project_params(const ParamVector& raw);

/// Maximize F_p + F_d. Requires config.fixed to be empty.
/// Throws NoFeasiblePoint if no restart reaches feasibility.
OptimizationResult maximize_sum(const OptimizerConfig& config);

/// Maximize one fidelity with the other pinned via config.fixed
/// (value in [0.5, 1]; the pinned eta is removed from the search vector).
OptimizationResult maximize_with_fixed(const OptimizerConfig& config);

/// One maximize_with_fixed per grid value (ascending, each in [0.5, 1]),
/// warm-starting every point from its predecessor's solution. Points that
/// fail are retained with converged = false.
std::vector<SweepPoint> sweep(const OptimizerConfig& config,
                              const std::vector<double>& grid);

}  // namespace qdel::optimizer
