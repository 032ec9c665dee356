// Copyright 2026 The qacl Authors
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

#ifndef QACL_CLI_COMMANDS_HPP_
#define QACL_CLI_COMMANDS_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace qacl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitMismatch = 3;
inline constexpr int kExitCapacity = 4;
inline constexpr int kExitUsage = 64;

// Entry point shared by the `qacl` binary and the tests. `args` excludes the
// program name. Reports go to `out`, diagnostics and usage text to `err`.
//
//   attack --variant <id> --n <int> --trials <int> [--seed <int>] [--format text|json]
//   mermin --n <int> --b <0|1>
//   flex --pair <id>|all
//   eff --model <id> --M <int> --Nc <int> --Nq <int> [--k <int>]
//   parse <file>
//   run <file> [--seed <int>]
//
// When --seed is absent, QACL_SEED supplies it.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qacl::cli

#endif  // QACL_CLI_COMMANDS_HPP_
