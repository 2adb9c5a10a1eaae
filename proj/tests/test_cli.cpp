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
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qdel/machine.hpp"
#include "qdel/params_io.hpp"

using namespace qdel;

namespace {

int run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"qdel"};
  argv.insert(argv.end(), args.begin(), args.end());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::string base;
  TempDir() {
    char tmpl[] = "/tmp/qdel_cli_XXXXXX";
    base = mkdtemp(tmpl);
  }
  std::string operator/(const std::string& name) const { return base + "/" + name; }
};

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run({}) == 1);
  CHECK(run({"optimize", "--bogus"}) == 1);
  CHECK(run({"sweep", "--fix", "deletion"}) == 1);          // missing range
  CHECK(run({"sweep", "--fix", "both", "--from", "0.5", "--to", "0.6",
             "--step", "0.1"}) == 1);
  CHECK(run({"optimize", "--profile", "loose"}) == 1);
}

TEST_CASE("verify: optimum is feasible on all profiles, exit 0") {
  TempDir tmp;
  io::save_params(machine::MachineParams::optimal_config(), tmp / "opt.kv");
  CHECK(run({"verify", "--params", (tmp / "opt.kv").c_str(), "--all-profiles"}) == 0);
  CHECK(run({"verify", "--params", (tmp / "opt.kv").c_str()}) == 0);
}

TEST_CASE("verify: infeasible point exits 2, missing file exits 3") {
  TempDir tmp;
  machine::MachineParams corner = machine::MachineParams::optimal_config();
  corner.eta2 = 1.0;
  corner.t_xx = 1.0;
  io::save_params(corner, tmp / "corner.kv");
  CHECK(run({"verify", "--params", (tmp / "corner.kv").c_str()}) == 2);
  CHECK(run({"verify", "--params", (tmp / "missing.kv").c_str()}) == 3);
}

TEST_CASE("verify: malformed parameter files exit 1") {
  TempDir tmp;
  {
    std::ofstream out(tmp / "bad.kv");
    out << "eta1 = 2\n";
  }
  CHECK(run({"verify", "--params", (tmp / "bad.kv").c_str()}) == 1);
  {
    std::ofstream out(tmp / "nonorm.kv");
    out << "p1 = 0.5\np5 = 1\nq1 = 1\nq5 = 1\n";
  }
  CHECK(run({"verify", "--params", (tmp / "nonorm.kv").c_str()}) == 1);
}

TEST_CASE("optimize: CSV schema, determinism and the params-out round trip") {
  TempDir tmp;
  const std::string out1 = tmp / "a.csv";
  const std::string out2 = tmp / "b.csv";
  const std::string kv = tmp / "best.kv";
  CHECK(run({"optimize", "--profile", "strict", "--restarts", "8", "--seed", "7",
             "--out", out1.c_str(), "--params-out", kv.c_str()}) == 0);
  CHECK(run({"optimize", "--profile", "strict", "--restarts", "8", "--seed", "7",
             "--out", out2.c_str()}) == 0);

  const std::string csv = slurp(out1);
  CHECK(csv == slurp(out2));  // same argv + seed -> byte-identical
  CHECK(csv.rfind("objective,f_p,f_d,eta1,eta2,txx,tzz,tzy,ns_norm,"
                  "min_eigenvalue,converged,seed\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + one row

  // the saved point verifies feasible and reproduces the fidelities
  CHECK(run({"verify", "--params", kv.c_str(), "--all-profiles"}) == 0);
  const machine::MachineParams best = io::load_params(kv);
  const auto fid = machine::fidelities(best);
  char expact[64];
  std::snprintf(expact, sizeof(expact), "%.12g", fid.f_p + fid.f_d);
  CHECK(csv.find(expact) != std::string::npos);
}

TEST_CASE("sweep: row count, schema, reruns byte-identical") {
  TempDir tmp;
  const std::string out1 = tmp / "c1.csv";
  const std::string out2 = tmp / "c2.csv";
  for (const auto* path : {out1.c_str(), out2.c_str()})
    CHECK(run({"sweep", "--fix", "deletion", "--from", "0.5", "--to", "0.6",
               "--step", "0.05", "--seed", "3", "--out", path}) == 0);
  const std::string csv = slurp(out1);
  CHECK(csv == slurp(out2));
  CHECK(csv.rfind("fixed_kind,fixed_value,max_other,sum,eta1,eta2,txx,tzz,tzy,"
                  "ns_norm,min_eigenvalue,restarts_used,converged\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + three rows

  // single-point grid: one row
  const std::string single = tmp / "single.csv";
  CHECK(run({"sweep", "--fix", "deletion", "--from", "0.5", "--to", "0.5",
             "--step", "0.1", "--seed", "3", "--out", single.c_str()}) == 0);
  CHECK(std::count(slurp(single).begin(), slurp(single).end(), '\n') == 2);
}

TEST_CASE("sweep: invalid ranges exit 1") {
  CHECK(run({"sweep", "--fix", "deletion", "--from", "0.4", "--to", "0.6",
             "--step", "0.1"}) == 1);
  CHECK(run({"sweep", "--fix", "deletion", "--from", "0.7", "--to", "0.6",
             "--step", "0.1"}) == 1);
  CHECK(run({"sweep", "--fix", "deletion", "--from", "0.5", "--to", "0.6",
             "--step", "-0.1"}) == 1);
}

TEST_CASE("simulate runs from a parameter file") {
  TempDir tmp;
  io::save_params(machine::MachineParams::optimal_config(), tmp / "opt.kv");
  CHECK(run({"simulate", "--params", (tmp / "opt.kv").c_str(), "--trials", "2000",
             "--seed", "4"}) == 0);
  CHECK(run({"simulate", "--params", (tmp / "opt.kv").c_str(), "--trials",
             "2000"}) == 1);  // --seed is required
}
