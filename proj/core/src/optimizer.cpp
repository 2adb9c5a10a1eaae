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

#include "qdel/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "qdel/rng.hpp"

namespace qdel::optimizer {

using constraints::ConstraintProfile;
using machine::MachineParams;

namespace {

// Parameter slots in the flat vector.
constexpr int kEta1 = 0, kEta2 = 1, kTxx = 2, kTzz = 3, kTzy = 4;
constexpr int kP = 5, kQ = 13;

struct Pin {
  int index;
  double value;
};

std::optional<Pin> pin_of(const OptimizerConfig& cfg) {
  if (!cfg.fixed) return std::nullopt;
  const int idx = cfg.fixed->kind == FixedKind::preservation ? kEta1 : kEta2;
  return Pin{idx, 2.0 * cfg.fixed->value - 1.0};
}

void validate_config(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw InvalidParams("optimizer: restarts must be >= 1");
  if (!(cfg.penalty.growth > 1.0))
    throw InvalidParams("optimizer: penalty growth factor must be > 1");
  if (cfg.penalty.stages < 1)
    throw InvalidParams("optimizer: penalty schedule needs >= 1 stage");
  if (cfg.fixed &&
      !(cfg.fixed->value >= 0.5 - 1e-12 && cfg.fixed->value <= 1.0 + 1e-12))
    throw InvalidParams("optimizer: fixed fidelity must lie in [0.5, 1]");
}

// ---------------------------------------------------------------------------
// Residual system with analytic gradients
// ---------------------------------------------------------------------------

struct ResidualRow {
  double value = 0.0;
  ParamVector grad{};
};

// Closed-form no-signaling residuals r0..r10 over the flat vector.
// `skip2` drops the standalone r2 (the relaxed profile).
void closed_form_rows(const ParamVector& t, bool skip2,
                      std::vector<ResidualRow>& rows) {
  const auto P = [&](int i) { return t[kP + i - 1]; };
  const auto Q = [&](int i) { return t[kQ + i - 1]; };
  const auto pi = [](int i) { return kP + i - 1; };
  const auto qi = [](int i) { return kQ + i - 1; };

  {  // r0: tzy = 0
    ResidualRow r;
    r.value = t[kTzy];
    r.grad[kTzy] = 1.0;
    rows.push_back(r);
  }
  {  // r1: p2p4 - p6p8 + q2q4 - q6q8
    ResidualRow r;
    r.value = P(2) * P(4) - P(6) * P(8) + Q(2) * Q(4) - Q(6) * Q(8);
    r.grad[pi(2)] = P(4); r.grad[pi(4)] = P(2);
    r.grad[pi(6)] = -P(8); r.grad[pi(8)] = -P(6);
    r.grad[qi(2)] = Q(4); r.grad[qi(4)] = Q(2);
    r.grad[qi(6)] = -Q(8); r.grad[qi(8)] = -Q(6);
    rows.push_back(r);
  }
  if (!skip2) {  // r2: p3p4 - p7p8 + q3q4 - q7q8
    ResidualRow r;
    r.value = P(3) * P(4) - P(7) * P(8) + Q(3) * Q(4) - Q(7) * Q(8);
    r.grad[pi(3)] = P(4); r.grad[pi(4)] = P(3);
    r.grad[pi(7)] = -P(8); r.grad[pi(8)] = -P(7);
    r.grad[qi(3)] = Q(4); r.grad[qi(4)] = Q(3);
    r.grad[qi(7)] = -Q(8); r.grad[qi(8)] = -Q(7);
    rows.push_back(r);
  }
  // r3..r6: eta2 - 2 * (signed squares)
  struct SquarePattern { int hi_p, lo_p; };  // eta2 = 2(hi^2 - lo^2 + ...)
  const SquarePattern sq[4] = {{5, 1}, {2, 6}, {7, 3}, {4, 8}};
  for (const auto& s : sq) {
    ResidualRow r;
    r.value = t[kEta2] - 2.0 * (P(s.hi_p) * P(s.hi_p) - P(s.lo_p) * P(s.lo_p) +
                                Q(s.hi_p) * Q(s.hi_p) - Q(s.lo_p) * Q(s.lo_p));
    r.grad[kEta2] = 1.0;
    r.grad[pi(s.hi_p)] = -4.0 * P(s.hi_p);
    r.grad[pi(s.lo_p)] = 4.0 * P(s.lo_p);
    r.grad[qi(s.hi_p)] = -4.0 * Q(s.hi_p);
    r.grad[qi(s.lo_p)] = 4.0 * Q(s.lo_p);
    rows.push_back(r);
  }
  // r7, r8: eta2 - 2 * (bilinears); r9, r10: (txx - tzz) - 2 * (bilinears)
  struct BilinearPattern { int a, b; bool eta; };
  const BilinearPattern bl[4] = {{1, 2, true}, {3, 4, true}, {2, 3, false}, {1, 4, false}};
  for (const auto& s : bl) {
    ResidualRow r;
    const double lead = s.eta ? t[kEta2] : t[kTxx] - t[kTzz];
    r.value = lead - 2.0 * (P(s.a) * P(s.b) - P(s.a + 4) * P(s.b + 4) +
                            Q(s.a) * Q(s.b) - Q(s.a + 4) * Q(s.b + 4));
    if (s.eta) {
      r.grad[kEta2] = 1.0;
    } else {
      r.grad[kTxx] = 1.0;
      r.grad[kTzz] = -1.0;
    }
    r.grad[pi(s.a)] = -2.0 * P(s.b); r.grad[pi(s.b)] = -2.0 * P(s.a);
    r.grad[pi(s.a + 4)] = 2.0 * P(s.b + 4); r.grad[pi(s.b + 4)] = 2.0 * P(s.a + 4);
    r.grad[qi(s.a)] = -2.0 * Q(s.b); r.grad[qi(s.b)] = -2.0 * Q(s.a);
    r.grad[qi(s.a + 4)] = 2.0 * Q(s.b + 4); r.grad[qi(s.b + 4)] = 2.0 * Q(s.a + 4);
    rows.push_back(r);
  }
}

// The matrix-level no-signaling defect collapses to a real symmetric 4x4:
// both eta terms and the tzy terms cancel between the +/- frames of each
// basis, leaving
//   Delta = (txx - tzz) * D + uu^T + ww^T - vv^T - xx^T
// with D = ff^T - gg^T for f = (1,0,0,-1)/sqrt2, g = (0,1,1,0)/sqrt2 and
// u, v, w, x the four amplitude blocks. Asserted against the literal
// frame-by-frame construction in the test suite.
using Sym4 = std::array<std::array<double, 4>, 4>;

const Sym4& matrix_basis() {
  static const Sym4 d = {{{0.5, 0, 0, -0.5},
                          {0, -0.5, -0.5, 0},
                          {0, -0.5, -0.5, 0},
                          {-0.5, 0, 0, 0.5}}};
  return d;
}

Sym4 matrix_delta(const ParamVector& t) {
  const Sym4& D = matrix_basis();
  const double td = t[kTxx] - t[kTzz];
  Sym4 delta{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double v = td * D[i][j];
      v += t[kP + i] * t[kP + j] + t[kQ + i] * t[kQ + j];         // u, w
      v -= t[kP + 4 + i] * t[kP + 4 + j] + t[kQ + 4 + i] * t[kQ + 4 + j];
      delta[i][j] = v;
    }
  return delta;
}

// ||Delta||_F^2 and its gradient.
double matrix_penalty(const ParamVector& t, ParamVector& grad_out) {
  const Sym4 delta = matrix_delta(t);
  const Sym4& D = matrix_basis();
  double value = 0.0;
  double dd = 0.0;
  std::array<double, 4> du{}, dv{}, dw{}, dx{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      value += delta[i][j] * delta[i][j];
      dd += delta[i][j] * D[i][j];
      du[i] += delta[i][j] * t[kP + j];
      dv[i] += delta[i][j] * t[kP + 4 + j];
      dw[i] += delta[i][j] * t[kQ + j];
      dx[i] += delta[i][j] * t[kQ + 4 + j];
    }
  grad_out[kTxx] += 2.0 * dd;
  grad_out[kTzz] -= 2.0 * dd;
  for (int i = 0; i < 4; ++i) {
    grad_out[kP + i] += 4.0 * du[i];
    grad_out[kP + 4 + i] -= 4.0 * dv[i];
    grad_out[kQ + i] += 4.0 * dw[i];
    grad_out[kQ + 4 + i] -= 4.0 * dx[i];
  }
  return value;
}

// Closed-form output eigenvalues and gradients; subgradient 0 at s = 0.
struct Spectrum {
  std::array<double, 4> lambda{};
  std::array<ParamVector, 4> grad{};
};

Spectrum spectrum_rows(const ParamVector& t) {
  Spectrum sp;
  const double e1 = t[kEta1], e2 = t[kEta2], a = t[kTxx], b = t[kTzz], c = t[kTzy];
  const double s = std::sqrt((e1 - e2) * (e1 - e2) + 4.0 * (c * c + b * b));
  sp.lambda = {0.25 * (1 + e1 + e2 + a), 0.25 * (1 - e1 - e2 + a),
               0.25 * (1 - a + s), 0.25 * (1 - a - s)};
  sp.grad[0][kEta1] = 0.25; sp.grad[0][kEta2] = 0.25; sp.grad[0][kTxx] = 0.25;
  sp.grad[1][kEta1] = -0.25; sp.grad[1][kEta2] = -0.25; sp.grad[1][kTxx] = 0.25;
  ParamVector ds{};
  if (s > 0.0) {
    ds[kEta1] = (e1 - e2) / s;
    ds[kEta2] = -(e1 - e2) / s;
    ds[kTzz] = 4.0 * b / s;
    ds[kTzy] = 4.0 * c / s;
  }
  for (int k = 0; k < kParamCount; ++k) {
    sp.grad[2][k] = 0.25 * ds[k];
    sp.grad[3][k] = -0.25 * ds[k];
  }
  sp.grad[2][kTxx] += -0.25;
  sp.grad[3][kTxx] += -0.25;
  return sp;
}

void check_box(const ParamVector& t) {
  for (double v : t)
    if (!(std::abs(v) <= 1.0 + 1e-9) || !std::isfinite(v))
      throw InvalidParams("penalty_objective: parameter outside [-1, 1]");
}

// ---------------------------------------------------------------------------
// Projection
// ---------------------------------------------------------------------------

void project_vector(ParamVector& t, const std::optional<Pin>& pin) {
  for (int i = 0; i < 5; ++i) t[i] = std::clamp(t[i], -1.0, 1.0);
  for (int off : {kP, kP + 4, kQ, kQ + 4}) {
    double n = 0.0;
    for (int i = 0; i < 4; ++i) n += t[off + i] * t[off + i];
    n = std::sqrt(n);
    if (n < 1e-12) {
      t[off] = 1.0;
      t[off + 1] = t[off + 2] = t[off + 3] = 0.0;
    } else {
      for (int i = 0; i < 4; ++i) t[off + i] /= n;
    }
  }
  if (pin) t[pin->index] = pin->value;
}

// ---------------------------------------------------------------------------
// Penalty evaluation
// ---------------------------------------------------------------------------

PenaltyEvaluation evaluate(const ParamVector& t, const OptimizerConfig& cfg,
                           double mu) {
  PenaltyEvaluation out;
  out.value = 1.0 + 0.5 * (t[kEta1] + t[kEta2]);
  out.gradient[kEta1] = 0.5;
  out.gradient[kEta2] = 0.5;

  if (!cfg.ns_disabled) {
    if (cfg.profile == ConstraintProfile::matrix) {
      ParamVector g{};
      const double v = matrix_penalty(t, g);
      out.value -= mu * v;
      for (int k = 0; k < kParamCount; ++k) out.gradient[k] -= mu * g[k];
    } else {
      std::vector<ResidualRow> rows;
      rows.reserve(11);
      closed_form_rows(t, cfg.profile == ConstraintProfile::relaxed, rows);
      for (const auto& r : rows) {
        out.value -= mu * r.value * r.value;
        const double w = -2.0 * mu * r.value;
        for (int k = 0; k < kParamCount; ++k) out.gradient[k] += w * r.grad[k];
      }
    }
  }

  const Spectrum sp = spectrum_rows(t);
  for (int j = 0; j < 4; ++j) {
    if (sp.lambda[j] >= 0.0) continue;
    const double h = -sp.lambda[j];
    out.value -= mu * h * h;
    const double w = 2.0 * mu * h;
    for (int k = 0; k < kParamCount; ++k) out.gradient[k] += w * sp.grad[j][k];
  }

  for (int off : {kP, kP + 4, kQ, kQ + 4}) {
    double n = -1.0;
    for (int i = 0; i < 4; ++i) n += t[off + i] * t[off + i];
    out.value -= mu * n * n;
    const double w = -4.0 * mu * n;
    for (int i = 0; i < 4; ++i) out.gradient[off + i] += w * t[off + i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inner ascent: projected gradient with Armijo backtracking
// ---------------------------------------------------------------------------

double dot(const ParamVector& a, const ParamVector& b) {
  double s = 0.0;
  for (int i = 0; i < kParamCount; ++i) s += a[i] * b[i];
  return s;
}

void ascend_stage(ParamVector& t, const OptimizerConfig& cfg, double mu,
                  const std::optional<Pin>& pin) {
  PenaltyEvaluation cur = evaluate(t, cfg, mu);
  double step = 0.25;
  for (int iter = 0; iter < cfg.max_inner_iterations; ++iter) {
    ParamVector g = cur.gradient;
    if (pin) g[pin->index] = 0.0;
    const double gnorm = std::sqrt(dot(g, g));
    if (gnorm <= 1e-13) break;

    bool accepted = false;
    ParamVector next{};
    PenaltyEvaluation next_eval;
    double move = 0.0;
    while (step >= 1e-14) {
      next = t;
      for (int k = 0; k < kParamCount; ++k) next[k] += step * g[k];
      project_vector(next, pin);
      next_eval = evaluate(next, cfg, mu);
      ParamVector d{};
      for (int k = 0; k < kParamCount; ++k) d[k] = next[k] - t[k];
      const double along = dot(g, d);
      if (next_eval.value >= cur.value + 1e-4 * std::max(along, 0.0) &&
          next_eval.value > cur.value) {
        move = std::sqrt(dot(d, d));
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    t = next;
    cur = next_eval;
    step = std::min(step * 1.3, 1.0);
    if (move <= cfg.step_tolerance) break;
  }
}

// ---------------------------------------------------------------------------
// Feasibility restoration: Gauss-Newton onto the active constraint manifold
// ---------------------------------------------------------------------------

// Stacked constraint system g(t) = 0: active no-signaling residuals (matrix
// profile contributes the entries of Delta), negative eigenvalues, and the
// block normalization defects.
std::vector<ResidualRow> restoration_rows(const ParamVector& t,
                                          const OptimizerConfig& cfg) {
  std::vector<ResidualRow> rows;
  if (!cfg.ns_disabled) {
    if (cfg.profile == ConstraintProfile::matrix) {
      const Sym4 delta = matrix_delta(t);
      const Sym4& D = matrix_basis();
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          const double w = (i == j) ? 1.0 : std::sqrt(2.0);  // Frobenius weight
          ResidualRow r;
          r.value = w * delta[i][j];
          r.grad[kTxx] = w * D[i][j];
          r.grad[kTzz] = -w * D[i][j];
          r.grad[kP + i] += w * t[kP + j];
          r.grad[kP + j] += w * t[kP + i];
          r.grad[kQ + i] += w * t[kQ + j];
          r.grad[kQ + j] += w * t[kQ + i];
          r.grad[kP + 4 + i] -= w * t[kP + 4 + j];
          r.grad[kP + 4 + j] -= w * t[kP + 4 + i];
          r.grad[kQ + 4 + i] -= w * t[kQ + 4 + j];
          r.grad[kQ + 4 + j] -= w * t[kQ + 4 + i];
          rows.push_back(r);
        }
    } else {
      closed_form_rows(t, cfg.profile == ConstraintProfile::relaxed, rows);
    }
  }
  const Spectrum sp = spectrum_rows(t);
  for (int j = 0; j < 4; ++j) {
    if (sp.lambda[j] >= 0.0) continue;
    ResidualRow r;
    r.value = sp.lambda[j];
    r.grad = sp.grad[j];
    rows.push_back(r);
  }
  for (int off : {kP, kP + 4, kQ, kQ + 4}) {
    ResidualRow r;
    r.value = -1.0;
    for (int i = 0; i < 4; ++i) {
      r.value += t[off + i] * t[off + i];
      r.grad[off + i] = 2.0 * t[off + i];
    }
    rows.push_back(r);
  }
  return rows;
}

double rows_norm(const std::vector<ResidualRow>& rows) {
  double s = 0.0;
  for (const auto& r : rows) s += r.value * r.value;
  return std::sqrt(s);
}

// Solve (A + ridge I) y = b for symmetric positive semidefinite A (m <= 19).
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, int m,
                    double ridge) {
  for (int i = 0; i < m; ++i) a[i * m + i] += ridge;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i * m + j];
      for (int k = 0; k < j; ++k) s -= a[i * m + k] * a[j * m + k];
      if (i == j) {
        if (s <= 0.0) return false;
        a[i * m + i] = std::sqrt(s);
      } else {
        a[i * m + j] = s / a[j * m + j];
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= a[i * m + k] * b[k];
    b[i] = s / a[i * m + i];
  }
  for (int i = m - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < m; ++k) s -= a[k * m + i] * b[k];
    b[i] = s / a[i * m + i];
  }
  return true;
}

void restore_feasibility(ParamVector& t, const OptimizerConfig& cfg,
                         const std::optional<Pin>& pin) {
  for (int it = 0; it < 30; ++it) {
    std::vector<ResidualRow> rows = restoration_rows(t, cfg);
    if (pin)
      for (auto& r : rows) r.grad[pin->index] = 0.0;
    const double gnorm = rows_norm(rows);
    if (gnorm <= 1e-13) break;

    const int m = static_cast<int>(rows.size());
    std::vector<double> gram(static_cast<std::size_t>(m) * m);
    std::vector<double> rhs(m);
    for (int i = 0; i < m; ++i) {
      rhs[i] = rows[i].value;
      for (int j = 0; j <= i; ++j) {
        const double v = dot(rows[i].grad, rows[j].grad);
        gram[i * m + j] = v;
        gram[j * m + i] = v;
      }
    }
    double trace = 0.0;
    for (int i = 0; i < m; ++i) trace += gram[i * m + i];
    double ridge = 1e-12 * (1.0 + trace / m);
    std::vector<double> y;
    bool solved = false;
    for (int attempt = 0; attempt < 4 && !solved; ++attempt) {
      std::vector<double> a = gram;
      y = rhs;
      solved = cholesky_solve(a, y, m, ridge);
      ridge *= 1e3;
    }
    if (!solved) break;

    // Minimum-norm correction t -= J^T y, damped until the defect shrinks.
    ParamVector delta{};
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < kParamCount; ++k) delta[k] += y[i] * rows[i].grad[k];
    double scale = 1.0;
    bool improved = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
      ParamVector trial = t;
      for (int k = 0; k < kParamCount; ++k)
        trial[k] = std::clamp(trial[k] - scale * delta[k], -1.0, 1.0);
      if (pin) trial[pin->index] = pin->value;
      if (rows_norm(restoration_rows(trial, cfg)) < gnorm) {
        t = trial;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) break;
  }
}

// ---------------------------------------------------------------------------
// Restart driver and deterministic reduction
// ---------------------------------------------------------------------------

struct Candidate {
  int index = 0;
  ParamVector point{};
  double objective = 0.0;
  double ns_norm = 0.0;
  bool feasible = false;
};

bool report_feasible_for(const constraints::ConstraintReport& rep,
                         const OptimizerConfig& cfg) {
  bool ok = rep.min_eigenvalue >= -cfg.feasibility_tolerance;
  for (double n : rep.normalization_residuals)
    ok = ok && n <= cfg.feasibility_tolerance;
  if (!cfg.ns_disabled) ok = ok && rep.ns_norm <= cfg.feasibility_tolerance;
  return ok;
}

ParamVector random_start(std::uint64_t seed, int index,
                         const std::optional<Pin>& pin) {
  Xoshiro256StarStar rng(seed ^ static_cast<std::uint64_t>(index));
  ParamVector t{};
  for (int i = 0; i < 5; ++i) t[i] = rng.uniform(-1.0, 1.0);
  for (int off : {kP, kP + 4, kQ, kQ + 4}) {
    double n = 0.0;
    for (int i = 0; i < 4; ++i) {
      t[off + i] = rng.gaussian();
      n += t[off + i] * t[off + i];
    }
    n = std::sqrt(n);
    for (int i = 0; i < 4; ++i) t[off + i] = n < 1e-12 ? (i == 0) : t[off + i] / n;
  }
  if (pin) t[pin->index] = pin->value;
  return t;
}

Candidate run_one(ParamVector start, int index, const OptimizerConfig& cfg,
                  const std::optional<Pin>& pin) {
  ParamVector t = start;
  project_vector(t, pin);
  double mu = cfg.penalty.initial_weight;
  for (int stage = 0; stage < cfg.penalty.stages; ++stage) {
    ascend_stage(t, cfg, mu, pin);
    mu *= cfg.penalty.growth;
  }
  restore_feasibility(t, cfg, pin);
  project_vector(t, pin);

  Candidate c;
  c.index = index;
  c.point = t;
  c.objective = 1.0 + 0.5 * (t[kEta1] + t[kEta2]);
  const auto rep = constraints::feasibility_report(unpack(t), cfg.profile,
                                                   cfg.feasibility_tolerance);
  c.ns_norm = rep.ns_norm;
  c.feasible = report_feasible_for(rep, cfg);
  return c;
}

// Highest objective among feasible; ties by lower ns_norm, then by position
// in the fixed candidate order (warm starts first, then restart index).
bool better(const Candidate& a, const Candidate& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.objective != b.objective) return a.objective > b.objective;
  if (a.ns_norm != b.ns_norm) return a.ns_norm < b.ns_norm;
  return false;  // earlier candidate wins
}

OptimizationResult maximize_impl(const OptimizerConfig& cfg,
                                 const std::vector<ParamVector>& warm_starts) {
  validate_config(cfg);
  const std::optional<Pin> pin = pin_of(cfg);

  std::vector<std::pair<int, ParamVector>> starts;
  starts.reserve(warm_starts.size() + cfg.restarts);
  for (const auto& w : warm_starts) starts.emplace_back(-1, w);
  for (int i = 0; i < cfg.restarts; ++i)
    starts.emplace_back(i, random_start(cfg.seed, i, pin));

  const int total = static_cast<int>(starts.size());
  std::vector<Candidate> candidates(total);
  int workers = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, total);
  if (workers == 1) {
    for (int i = 0; i < total; ++i)
      candidates[i] = run_one(starts[i].second, starts[i].first, cfg, pin);
  } else {
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w] {
        for (int i = w; i < total; i += workers)
          candidates[i] = run_one(starts[i].second, starts[i].first, cfg, pin);
      }));
    }
    for (auto& f : futures) f.get();
  }

  int best = 0;
  for (int i = 1; i < total; ++i)
    if (better(candidates[i], candidates[best])) best = i;

  OptimizationResult result;
  result.params = unpack(candidates[best].point);
  result.fidelities = machine::fidelities(result.params);
  result.objective = result.fidelities.f_p + result.fidelities.f_d;
  result.report = constraints::feasibility_report(result.params, cfg.profile,
                                                  cfg.feasibility_tolerance);
  result.converged = candidates[best].feasible;
  result.restarts.reserve(total);
  for (const auto& c : candidates)
    result.restarts.push_back({c.index, c.objective, c.feasible});

  if (!result.converged)
    throw NoFeasiblePoint("no restart reached feasibility under profile " +
                              std::string(constraints::profile_name(cfg.profile)),
                          result);
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

ParamVector pack(const MachineParams& m) {
  ParamVector t{};
  t[kEta1] = m.eta1;
  t[kEta2] = m.eta2;
  t[kTxx] = m.t_xx;
  t[kTzz] = m.t_zz;
  t[kTzy] = m.t_zy;
  for (int i = 0; i < 8; ++i) {
    t[kP + i] = m.p[i];
    t[kQ + i] = m.q[i];
  }
  return t;
}

MachineParams unpack(const ParamVector& t) {
  MachineParams m;
  m.eta1 = t[kEta1];
  m.eta2 = t[kEta2];
  m.t_xx = t[kTxx];
  m.t_zz = t[kTzz];
  m.t_zy = t[kTzy];
  for (int i = 0; i < 8; ++i) {
    m.p[i] = t[kP + i];
    m.q[i] = t[kQ + i];
  }
  return m;
}

const char* fixed_kind_name(FixedKind kind) {
  return kind == FixedKind::deletion ? "deletion" : "preservation";
}

PenaltyEvaluation penalty_objective(const ParamVector& raw,
                                    const OptimizerConfig& config, double mu) {
  check_box(raw);
  return evaluate(raw, config, mu);
}

MachineParams project_params(const ParamVector& raw) {
  ParamVector t = raw;
  project_vector(t, std::nullopt);
  return unpack(t);
}

OptimizationResult maximize_sum(const OptimizerConfig& config) {
  if (config.fixed)
    throw InvalidParams("maximize_sum: config carries a fixed fidelity; use "
                        "maximize_with_fixed");
  return maximize_impl(config, {});
}

OptimizationResult maximize_with_fixed(const OptimizerConfig& config) {
  if (!config.fixed)
    throw InvalidParams("maximize_with_fixed: config.fixed is required");
  return maximize_impl(config, {});
}

std::vector<SweepPoint> sweep(const OptimizerConfig& config,
                              const std::vector<double>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.5 - 1e-12 && grid[i] <= 1.0 + 1e-12))
      throw InvalidParams("sweep: grid values must lie in [0.5, 1]");
    if (i > 0 && grid[i] < grid[i - 1])
      throw InvalidParams("sweep: grid must be ascending");
  }
  const FixedKind kind = config.fixed ? config.fixed->kind : FixedKind::deletion;

  std::vector<SweepPoint> points;
  points.reserve(grid.size());
  std::vector<ParamVector> warm;
  for (double value : grid) {
    OptimizerConfig cfg = config;
    cfg.fixed = FixedFidelity{kind, value};
    const std::optional<Pin> pin = pin_of(cfg);
    std::vector<ParamVector> starts = warm;
    for (auto& s : starts) s[pin->index] = pin->value;

    SweepPoint pt;
    pt.fixed_kind = kind;
    pt.fixed_value = value;
    pt.restarts_used = static_cast<int>(starts.size()) + cfg.restarts;
    OptimizationResult res;
    try {
      res = maximize_impl(cfg, starts);
      pt.converged = true;
    } catch (const NoFeasiblePoint& e) {
      res = e.best;
      pt.converged = false;
    }
    pt.params = res.params;
    pt.max_other = kind == FixedKind::deletion ? res.fidelities.f_p
                                               : res.fidelities.f_d;
    pt.sum = pt.fixed_value + pt.max_other;
    pt.ns_norm = res.report.ns_norm;
    pt.min_eigenvalue = res.report.min_eigenvalue;
    points.push_back(pt);

    warm.clear();
    warm.push_back(pack(res.params));
  }
  return points;
}

}  // namespace qdel::optimizer
