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

// Command-line surface of the deletion-machine toolkit.
//
// Subcommands:
//   optimize [--profile strict|relaxed|matrix] [--restarts N] [--seed S]
//            [--tol T] [--out results.csv] [--params-out point.kv]
//   sweep    --fix deletion|preservation --from A --to B --step H
//            [--profile strict|relaxed|matrix] [--out curve.csv] [--seed S]
//   verify   --params point.kv [--all-profiles] [--tol T]
//   simulate --params point.kv --trials N --seed S
//
// Exit codes: 0 success, 1 argument/usage error, 2 no feasible point or
// non-convergence (verify: point infeasible), 3 I/O error.
namespace qdel::cli {

int run(int argc, const char* const* argv);

}  // namespace qdel::cli
