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
#include <map>

#include "qdel/constraints.hpp"
#include "qdel/signaling.hpp"
#include "support/test_support.hpp"

using namespace qdel;
using namespace qdel::constraints;
using machine::MachineParams;

TEST_CASE("closed-form residuals vanish at the optimum") {
  for (const auto& r : ns_residuals_closed_form(MachineParams::optimal_config()))
    CHECK(std::abs(r.value) < 1e-15);
}

TEST_CASE("raising eta2 alone shifts exactly the eta2-linked residuals") {
  MachineParams p = MachineParams::optimal_config();
  p.eta2 = 0.2;
  const auto rs = ns_residuals_closed_form(p);
  std::map<std::string, double> by_name;
  for (const auto& r : rs) by_name[r.name] = r.value;
  for (const char* name : {"r3_eta2_sq15", "r4_eta2_sq26", "r5_eta2_sq37",
                           "r6_eta2_sq48", "r7_eta2_p1p2", "r8_eta2_p3p4"})
    CHECK(by_name[name] == doctest::Approx(0.2));
  for (const char* name : {"r0_tzy", "r1_p2p4", "r2_p3p4", "r9_tdiff_p2p3",
                           "r10_tdiff_p1p4"})
    CHECK(std::abs(by_name[name]) < 1e-15);
}

TEST_CASE("relaxed residual set is the strict set minus r2") {
  Xoshiro256StarStar rng(0x1234);
  for (int n = 0; n < 50; ++n) {
    const MachineParams p = test::random_params(rng);
    const auto strict = ns_residuals(p, ConstraintProfile::strict);
    const auto relaxed = ns_residuals(p, ConstraintProfile::relaxed);
    CHECK(strict.size() == 11);
    CHECK(relaxed.size() == 10);
    std::map<std::string, double> sm;
    for (const auto& r : strict) sm[r.name] = r.value;
    for (const auto& r : relaxed) {
      REQUIRE(sm.count(r.name) == 1);
      CHECK(sm[r.name] == r.value);
    }
    CHECK(sm.count("r2_p3p4") == 1);
  }
}

TEST_CASE("ns_residual_matrix: optimum, corrupted output, ensembles") {
  CHECK(ns_residual_matrix(MachineParams::optimal_config()) < 1e-12);

  // Both ensemble sides at the optimum equal (I/2 + 2|00><00|) / 4.
  const auto ens = signaling::bob_ensembles(MachineParams::optimal_config());
  const auto expect =
      (qop::ComplexMatrix4::identity().scaled(0.5) + test::basis_projector(0).scaled(2.0))
          .scaled(0.25);
  CHECK(test::max_abs_diff(ens.rho_z, expect) < 1e-14);
  CHECK(test::max_abs_diff(ens.rho_x, expect) < 1e-14);

  MachineParams p = MachineParams::optimal_config();
  p.p[4] = 0.0;
  p.p[5] = 1.0;  // phi' becomes |01>
  CHECK(ns_residual_matrix(p) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("input-side mixture identity holds exactly") {
  CHECK(input_mixture_identity_residual() < 1e-12);
}

TEST_CASE("positivity_spectrum: known points") {
  const auto opt = positivity_spectrum(MachineParams::optimal_config());
  std::array<double, 4> sorted = opt;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted[0] == doctest::Approx(0.0));
  CHECK(sorted[1] == doctest::Approx(0.0));
  CHECK(sorted[2] == doctest::Approx(0.5));
  CHECK(sorted[3] == doctest::Approx(0.5));

  MachineParams flat = MachineParams::optimal_config();
  flat.eta1 = 0.0;
  for (double l : positivity_spectrum(flat)) CHECK(l == doctest::Approx(0.25));

  MachineParams mid = MachineParams::optimal_config();
  mid.eta1 = 0.5;
  mid.eta2 = 0.3;
  auto lam = positivity_spectrum(mid);
  std::sort(lam.begin(), lam.end());
  CHECK(lam[0] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(lam[1] == doctest::Approx(0.20).epsilon(1e-12));
  CHECK(lam[2] == doctest::Approx(0.30).epsilon(1e-12));
  CHECK(lam[3] == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("closed-form spectrum matches the numeric eigensolver as multisets") {
  Xoshiro256StarStar rng(0x0DD5);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const MachineParams p = test::random_params(rng);
    auto closed = positivity_spectrum(p);
    auto numeric = qop::eigenvalues(qop::to_matrix(machine::canonical_output(p)));
    std::sort(closed.begin(), closed.end());
    std::sort(numeric.begin(), numeric.end());
    for (int k = 0; k < 4; ++k)
      worst = std::max(worst, std::abs(closed[k] - numeric[k]));

    double sum = 0.0;
    for (double l : closed) sum += l;
    CHECK(std::abs(sum - 1.0) < 1e-14);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("normalization_residuals") {
  const auto zero = normalization_residuals(MachineParams::optimal_config());
  for (double r : zero) CHECK(r == doctest::Approx(0.0));

  MachineParams empty;  // all amplitudes zero
  for (double r : normalization_residuals(empty)) CHECK(r == doctest::Approx(1.0));

  MachineParams mixed = MachineParams::optimal_config();
  mixed.p[0] = 0.6;
  mixed.p[1] = 0.8;
  CHECK(normalization_residuals(mixed)[0] < 1e-15);
}

TEST_CASE("feasibility_report: optimum and an infeasible corner") {
  const auto ok = feasibility_report(MachineParams::optimal_config(),
                                     ConstraintProfile::strict, 1e-8);
  CHECK(ok.feasible);
  CHECK(ok.ns_norm < 1e-12);
  CHECK(ok.min_eigenvalue >= -1e-12);

  MachineParams corner = MachineParams::optimal_config();
  corner.eta2 = 1.0;
  corner.t_xx = 1.0;
  const auto bad = feasibility_report(corner, ConstraintProfile::strict, 1e-8);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.min_eigenvalue == doctest::Approx(0.0));
  for (const auto& r : bad.ns_residuals)
    if (std::string(r.name).rfind("r3", 0) == 0 ||
        std::string(r.name).rfind("r8", 0) == 0)
      CHECK(r.value == doctest::Approx(1.0));

  MachineParams invalid = MachineParams::optimal_config();
  invalid.eta1 = 1.5;
  CHECK_THROWS_AS((void)feasibility_report(invalid, ConstraintProfile::strict, 1e-8),
                  InvalidParams);
}

TEST_CASE("strict-feasible within tolerance implies relaxed-feasible") {
  Xoshiro256StarStar rng(0x9999);
  for (int n = 0; n < 50; ++n) {
    const MachineParams p = test::random_params(rng);
    const auto s = feasibility_report(p, ConstraintProfile::strict, 1e-9);
    const auto r = feasibility_report(p, ConstraintProfile::relaxed, 1e-9);
    if (s.feasible) CHECK(r.feasible);
    CHECK(r.ns_norm <= s.ns_norm + 1e-15);
  }
}

TEST_CASE("matrix residual small implies indistinguishable ensembles") {
  // At the optimum (matrix residual 0) Bob's ensembles coincide.
  const auto ens = signaling::bob_ensembles(MachineParams::optimal_config());
  CHECK(qop::trace_distance(ens.rho_z, ens.rho_x) < 1e-10);
}

// The three profiles encode genuinely different constraint sets. This family
// of points satisfies every relaxed residual analytically with eta1 = 1 and
// eta2 free, so the relaxed system does not bound F_p + F_d by 3/2; the
// strict system rejects the same points through r2 alone, and the matrix
// residual shows they remain operationally distinguishable.
TEST_CASE("relaxed profile admits fidelity sums above 3/2") {
  for (double eta2 : {0.1, 0.5, 1.0}) {
    const MachineParams p = test::relaxed_high_sum_point(eta2);
    CHECK_NOTHROW(machine::validate(p));

    const auto relaxed = feasibility_report(p, ConstraintProfile::relaxed, 1e-9);
    CHECK(relaxed.feasible);
    CHECK(relaxed.ns_norm < 1e-12);
    CHECK(relaxed.min_eigenvalue >= -1e-12);

    const auto f = machine::fidelities(p);
    CHECK(f.f_p == doctest::Approx(1.0));
    CHECK(f.f_p + f.f_d == doctest::Approx(1.5 + 0.5 * eta2));

    const auto strict = feasibility_report(p, ConstraintProfile::strict, 1e-9);
    CHECK_FALSE(strict.feasible);
    CHECK(ns_residuals_closed_form(p)[2].value == doctest::Approx(0.5 * eta2));

    if (eta2 > 0.2) CHECK(ns_residual_matrix(p) > 0.1);
  }
}

TEST_CASE("matrix profile admits perfect preservation plus deletion") {
  // f = (|01>+|10>)/sqrt2 and g = (|00>-|11>)/sqrt2 solve the operator
  // identity at eta1 = eta2 = t_xx = 1, where the sum reaches 2.
  const double h = 1.0 / std::sqrt(2.0);
  MachineParams p;
  p.eta1 = 1.0;
  p.eta2 = 1.0;
  p.t_xx = 1.0;
  p.p = {0, h, h, 0, h, 0, 0, -h};
  p.q = {0, h, h, 0, 0, h, h, 0};
  const auto rep = feasibility_report(p, ConstraintProfile::matrix, 1e-9);
  CHECK(rep.feasible);
  CHECK(rep.ns_norm < 1e-12);
  const auto f = machine::fidelities(p);
  CHECK(f.f_p + f.f_d == doctest::Approx(2.0));
}
