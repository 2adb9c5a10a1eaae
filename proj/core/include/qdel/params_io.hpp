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

#include <iosfwd>
#include <string>

#include "qdel/machine.hpp"

// Flat key-value parameter files. Keys are exactly
//   eta1, eta2, txx, tzz, tzy, p1..p8, q1..q8
// one `key = value` pair per line; `#` starts a comment; unknown or duplicate
// keys are rejected. Missing keys default to 0, but the amplitude blocks of
// the result must have unit norm (NormalizationError otherwise).
namespace qdel::io {

/// Throws IoError (unreadable file), ParseError, NormalizationError.
machine::MachineParams load_params(const std::string& path);

/// Same grammar, reading from a stream. `origin` labels error messages.
machine::MachineParams parse_params(std::istream& in, const std::string& origin);

/// Full-precision (17 significant digits) rendering in canonical key order.
std::string format_params(const machine::MachineParams& params);

/// Throws IoError on failure to write.
void save_params(const machine::MachineParams& params, const std::string& path);

}  // namespace qdel::io
