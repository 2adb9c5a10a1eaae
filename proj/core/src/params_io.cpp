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

#include "qdel/params_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qdel::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// key -> pointer-to-member accessor over a params instance
double* field_slot(machine::MachineParams& m, const std::string& key) {
  if (key == "eta1") return &m.eta1;
  if (key == "eta2") return &m.eta2;
  if (key == "txx") return &m.t_xx;
  if (key == "tzz") return &m.t_zz;
  if (key == "tzy") return &m.t_zy;
  if (key.size() == 2 && (key[0] == 'p' || key[0] == 'q') && key[1] >= '1' &&
      key[1] <= '8') {
    const int i = key[1] - '1';
    return key[0] == 'p' ? &m.p[i] : &m.q[i];
  }
  return nullptr;
}

}  // namespace

machine::MachineParams parse_params(std::istream& in, const std::string& origin) {
  machine::MachineParams params;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(origin + ":" + std::to_string(lineno) +
                           ": expected `key = value`",
                       lineno, "");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    double* slot = field_slot(params, key);
    if (slot == nullptr)
      throw ParseError(origin + ":" + std::to_string(lineno) +
                           ": unknown key `" + key + "`",
                       lineno, key);
    if (!seen.insert(key).second)
      throw ParseError(origin + ":" + std::to_string(lineno) +
                           ": duplicate key `" + key + "`",
                       lineno, key);

    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v))
      throw ParseError(origin + ":" + std::to_string(lineno) +
                           ": bad numeric value `" + value + "` for `" + key + "`",
                       lineno, key);
    if (std::abs(v) > 1.0)
      throw ParseError(origin + ":" + std::to_string(lineno) + ": value " +
                           value + " for `" + key + "` outside [-1, 1]",
                       lineno, key);
    *slot = v;
  }

  const auto norm_sq = [](const std::array<double, 8>& a, int off) {
    return a[off] * a[off] + a[off + 1] * a[off + 1] + a[off + 2] * a[off + 2] +
           a[off + 3] * a[off + 3];
  };
  static const char* const kBlocks[4] = {"p1..p4", "p5..p8", "q1..q4", "q5..q8"};
  const std::array<double, 4> norms = {norm_sq(params.p, 0), norm_sq(params.p, 4),
                                       norm_sq(params.q, 0), norm_sq(params.q, 4)};
  for (int b = 0; b < 4; ++b) {
    if (std::abs(norms[b] - 1.0) > 1e-9) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "%s: amplitude block %s has squared norm %.12g, expected 1",
                    origin.c_str(), kBlocks[b], norms[b]);
      throw NormalizationError(buf);
    }
  }
  return params;
}

machine::MachineParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open parameter file `" + path + "`");
  return parse_params(in, path);
}

std::string format_params(const machine::MachineParams& params) {
  std::string out;
  char buf[64];
  const auto emit = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%s = %.17g\n", key, v);
    out += buf;
  };
  emit("eta1", params.eta1);
  emit("eta2", params.eta2);
  emit("txx", params.t_xx);
  emit("tzz", params.t_zz);
  emit("tzy", params.t_zy);
  for (int i = 0; i < 8; ++i) {
    char key[4] = {'p', static_cast<char>('1' + i), 0, 0};
    emit(key, params.p[i]);
  }
  for (int i = 0; i < 8; ++i) {
    char key[4] = {'q', static_cast<char>('1' + i), 0, 0};
    emit(key, params.q[i]);
  }
  return out;
}

void save_params(const machine::MachineParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open `" + path + "` for writing");
  out << format_params(params);
  if (!out.flush()) throw IoError("failed writing `" + path + "`");
}

}  // namespace qdel::io
