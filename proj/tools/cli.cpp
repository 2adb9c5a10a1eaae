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

#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "qdel/constraints.hpp"
#include "qdel/optimizer.hpp"
#include "qdel/params_io.hpp"
#include "qdel/signaling.hpp"

namespace qdel::cli {

namespace {

using constraints::ConstraintProfile;

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ConstraintProfile profile_from(const std::string& name) {
  if (name == "strict") return ConstraintProfile::strict;
  if (name == "relaxed") return ConstraintProfile::relaxed;
  return ConstraintProfile::matrix;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open `" + path + "` for writing");
  out << header << "\n";
  for (const auto& r : rows) out << r << "\n";
  if (!out.flush()) throw IoError("failed writing `" + path + "`");
}

std::string optimize_csv_row(const optimizer::OptimizationResult& res,
                             std::uint64_t seed) {
  const auto& m = res.params;
  std::string row;
  for (double v : {res.objective, res.fidelities.f_p, res.fidelities.f_d,
                   m.eta1, m.eta2, m.t_xx, m.t_zz, m.t_zy,
                   res.report.ns_norm, res.report.min_eigenvalue})
    row += g12(v) + ",";
  row += std::string(res.converged ? "1" : "0") + "," + std::to_string(seed);
  return row;
}

void print_point(const machine::MachineParams& m) {
  std::printf("eta1 = %s  eta2 = %s  txx = %s  tzz = %s  tzy = %s\n",
              g12(m.eta1).c_str(), g12(m.eta2).c_str(), g12(m.t_xx).c_str(),
              g12(m.t_zz).c_str(), g12(m.t_zy).c_str());
}

void print_result(const optimizer::OptimizationResult& res,
                  const optimizer::OptimizerConfig& cfg) {
  int feasible = 0;
  for (const auto& r : res.restarts) feasible += r.feasible ? 1 : 0;
  std::printf("profile: %s\n", constraints::profile_name(cfg.profile));
  std::printf("seed: %llu  restarts: %zu  feasible: %d/%zu\n",
              static_cast<unsigned long long>(cfg.seed), res.restarts.size(),
              feasible, res.restarts.size());
  std::printf("objective (F_p + F_d): %s\n", g12(res.objective).c_str());
  std::printf("F_p: %s  F_d: %s\n", g12(res.fidelities.f_p).c_str(),
              g12(res.fidelities.f_d).c_str());
  print_point(res.params);
  std::printf("ns_norm: %s  min_eigenvalue: %s\n", g12(res.report.ns_norm).c_str(),
              g12(res.report.min_eigenvalue).c_str());
  std::printf("converged: %s\n", res.converged ? "yes" : "no");
}

int cmd_optimize(const std::string& profile, int restarts, std::uint64_t seed,
                 double tol, const std::string& out,
                 const std::string& params_out) {
  optimizer::OptimizerConfig cfg;
  cfg.profile = profile_from(profile);
  cfg.restarts = restarts;
  cfg.seed = seed;
  cfg.feasibility_tolerance = tol;
  cfg.threads = 0;

  optimizer::OptimizationResult res;
  int code = 0;
  try {
    res = optimizer::maximize_sum(cfg);
  } catch (const optimizer::NoFeasiblePoint& e) {
    std::fprintf(stderr, "optimize: %s\n", e.what());
    res = e.best;
    code = 2;
  }
  print_result(res, cfg);
  if (!out.empty())
    write_csv(out,
              "objective,f_p,f_d,eta1,eta2,txx,tzz,tzy,ns_norm,"
              "min_eigenvalue,converged,seed",
              {optimize_csv_row(res, seed)});
  if (!params_out.empty()) io::save_params(res.params, params_out);
  return code;
}

int cmd_sweep(const std::string& fix, double from, double to, double step,
              const std::string& profile, const std::string& out,
              std::uint64_t seed) {
  if (step <= 0.0 && to > from) {
    std::fprintf(stderr, "sweep: --step must be positive\n");
    return 1;
  }
  if (to < from) {
    std::fprintf(stderr, "sweep: --to must be >= --from\n");
    return 1;
  }
  std::vector<double> grid;
  const int n = step > 0.0 ? static_cast<int>(std::floor((to - from) / step + 1e-9))
                           : 0;
  for (int k = 0; k <= n; ++k) grid.push_back(from + k * step);
  for (double v : grid) {
    if (v < 0.5 - 1e-12 || v > 1.0 + 1e-12) {
      std::fprintf(stderr, "sweep: grid value %g outside [0.5, 1]\n", v);
      return 1;
    }
  }

  optimizer::OptimizerConfig cfg;
  cfg.profile = profile_from(profile);
  cfg.seed = seed;
  cfg.threads = 0;
  const optimizer::FixedKind kind = fix == "deletion"
                                        ? optimizer::FixedKind::deletion
                                        : optimizer::FixedKind::preservation;
  cfg.fixed = optimizer::FixedFidelity{kind, grid.empty() ? 0.5 : grid.front()};

  std::printf("profile: %s\n", constraints::profile_name(cfg.profile));
  std::printf("sweep: fixing %s over %zu point(s)\n",
              optimizer::fixed_kind_name(kind), grid.size());

  const auto points = optimizer::sweep(cfg, grid);
  std::vector<std::string> rows;
  rows.reserve(points.size());
  for (const auto& pt : points) {
    std::printf("fixed %s = %s -> max other = %s  (sum %s, %s)\n",
                optimizer::fixed_kind_name(pt.fixed_kind),
                g12(pt.fixed_value).c_str(), g12(pt.max_other).c_str(),
                g12(pt.sum).c_str(), pt.converged ? "converged" : "FAILED");
    std::string row;
    row += std::string(optimizer::fixed_kind_name(pt.fixed_kind)) + ",";
    for (double v : {pt.fixed_value, pt.max_other, pt.sum, pt.params.eta1,
                     pt.params.eta2, pt.params.t_xx, pt.params.t_zz,
                     pt.params.t_zy, pt.ns_norm, pt.min_eigenvalue})
      row += g12(v) + ",";
    row += std::to_string(pt.restarts_used) + "," + (pt.converged ? "1" : "0");
    rows.push_back(row);
  }
  if (!out.empty())
    write_csv(out,
              "fixed_kind,fixed_value,max_other,sum,eta1,eta2,txx,tzz,tzy,"
              "ns_norm,min_eigenvalue,restarts_used,converged",
              rows);
  return 0;
}

int cmd_verify(const std::string& params_path, bool all_profiles, double tol) {
  const machine::MachineParams params = io::load_params(params_path);
  const auto fid = machine::fidelities(params);

  std::vector<ConstraintProfile> profiles = {ConstraintProfile::strict};
  if (all_profiles)
    profiles = {ConstraintProfile::strict, ConstraintProfile::relaxed,
                ConstraintProfile::matrix};

  std::printf("params: %s\n", params_path.c_str());
  std::printf("F_p: %s  F_d: %s\n", g12(fid.f_p).c_str(), g12(fid.f_d).c_str());
  bool all_ok = true;
  for (const auto profile : profiles) {
    const auto rep = constraints::feasibility_report(params, profile, tol);
    std::printf("profile: %s  (tol %g)\n", constraints::profile_name(profile), tol);
    for (const auto& r : rep.ns_residuals)
      std::printf("  %-16s % .12g\n", r.name, r.value);
    std::printf("  ns_norm: %s\n", g12(rep.ns_norm).c_str());
    std::printf("  min_eigenvalue: %s\n", g12(rep.min_eigenvalue).c_str());
    std::printf("  normalization: %s %s %s %s\n",
                g12(rep.normalization_residuals[0]).c_str(),
                g12(rep.normalization_residuals[1]).c_str(),
                g12(rep.normalization_residuals[2]).c_str(),
                g12(rep.normalization_residuals[3]).c_str());
    std::printf("  feasible: %s\n", rep.feasible ? "yes" : "no");
    all_ok = all_ok && rep.feasible;
  }
  return all_ok ? 0 : 2;
}

int cmd_simulate(const std::string& params_path, std::uint64_t trials,
                 std::uint64_t seed) {
  const machine::MachineParams params = io::load_params(params_path);
  const auto stats = signaling::simulate_game(params, trials, seed);
  std::printf("trials: %llu\n", static_cast<unsigned long long>(stats.trials));
  std::printf("successes: %llu\n", static_cast<unsigned long long>(stats.successes));
  std::printf("empirical rate: %s\n", g12(stats.empirical_rate).c_str());
  std::printf("analytic rate: %s\n", g12(stats.analytic_rate).c_str());
  std::printf("z-score: %s\n", g12(stats.z_score).c_str());
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"universal covariant deletion machine: no-signaling bounds, "
               "fidelity tradeoffs and the signaling game"};
  app.require_subcommand(1);

  std::string profile = "strict";
  int restarts = 64;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::string out, params_out, params_path, fix;
  double from = 0.5, to = 1.0, step = 0.05;
  bool all_profiles = false;
  double verify_tol = 1e-8;
  std::uint64_t trials = 0;

  auto* optimize = app.add_subcommand("optimize", "maximize F_p + F_d");
  optimize->add_option("--profile", profile, "constraint profile")
      ->check(CLI::IsMember({"strict", "relaxed", "matrix"}));
  optimize->add_option("--restarts", restarts, "independent starts")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--seed", seed, "RNG seed");
  optimize->add_option("--tol", tol, "feasibility tolerance")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--out", out, "CSV output path");
  optimize->add_option("--params-out", params_out, "write best point as key-value file");

  std::string sweep_profile = "relaxed";
  auto* sweep = app.add_subcommand("sweep", "fidelity tradeoff curve");
  sweep->add_option("--fix", fix, "which fidelity to hold fixed")
      ->required()
      ->check(CLI::IsMember({"deletion", "preservation"}));
  sweep->add_option("--from", from, "first fixed value")->required();
  sweep->add_option("--to", to, "last fixed value")->required();
  sweep->add_option("--step", step, "grid step")->required();
  sweep->add_option("--profile", sweep_profile, "constraint profile")
      ->check(CLI::IsMember({"strict", "relaxed", "matrix"}));
  sweep->add_option("--out", out, "CSV output path");
  sweep->add_option("--seed", seed, "RNG seed");

  auto* verify = app.add_subcommand("verify", "feasibility report for a point");
  verify->add_option("--params", params_path, "key-value parameter file")->required();
  verify->add_flag("--all-profiles", all_profiles, "report strict, relaxed and matrix");
  verify->add_option("--tol", verify_tol, "feasibility tolerance")
      ->check(CLI::PositiveNumber);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo signaling game");
  simulate->add_option("--params", params_path, "key-value parameter file")->required();
  simulate->add_option("--trials", trials, "number of rounds")->required();
  simulate->add_option("--seed", seed, "RNG seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s: %s\n", argv[0], e.what());
    return 1;
  }

  try {
    if (optimize->parsed())
      return cmd_optimize(profile, restarts, seed, tol, out, params_out);
    if (sweep->parsed())
      return cmd_sweep(fix, from, to, step, sweep_profile, out, seed);
    if (verify->parsed()) return cmd_verify(params_path, all_profiles, verify_tol);
    if (simulate->parsed()) return cmd_simulate(params_path, trials, seed);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const optimizer::NoFeasiblePoint& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {  // parse, normalization, invalid params
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace qdel::cli
