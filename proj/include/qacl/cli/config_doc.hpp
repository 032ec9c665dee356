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

#ifndef QACL_CLI_CONFIG_DOC_HPP_
#define QACL_CLI_CONFIG_DOC_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qacl/acl/config.hpp"
#include "qacl/acl/program.hpp"
#include "qacl/acl/scheduler.hpp"

namespace qacl::cli {

// Line-oriented system description:
//
//   # comment
//   system demo
//   model subsys:k=2
//   subjects u v
//   classical A:1 B:2
//   quantum X1:1 X2:1
//   guard Mq
//   grant u {X1,X2} CNOT,measure
//   group X1 1
//   entangle-allow {X1,X2} true
//   program u : h(X1) cnot(X1,X2) measure(m,X1,X2) write(A,bit(m,0)) halt
//   scheduler script u u u
//   seed 7
//   trials 10

struct Mnemonic {
  std::string name;
  std::vector<std::string> args;  // whitespace-free
  std::string right;              // `@right` suffix, empty when absent

  friend bool operator==(const Mnemonic&, const Mnemonic&) = default;
};

struct ProgramBlock {
  std::string subject;
  std::vector<Mnemonic> code;

  friend bool operator==(const ProgramBlock&, const ProgramBlock&) = default;
};

struct SchedulerDecl {
  enum class Kind { kScript, kRoundRobin, kRandom };
  Kind kind = Kind::kRoundRobin;
  std::vector<std::string> script;
  std::uint64_t seed = 0;

  friend bool operator==(const SchedulerDecl&, const SchedulerDecl&) = default;
};

struct Document {
  std::string system = "system";
  std::string model;  // canonical model id
  std::vector<std::string> subjects;
  std::vector<acl::RegisterDecl> classical;
  std::vector<acl::RegisterDecl> quantum;
  std::vector<std::string> guards;
  std::vector<acl::Grant> grants;
  std::vector<std::pair<std::string, int>> groups;
  std::vector<acl::FlagAssign> entangle_allow;
  std::vector<ProgramBlock> programs;
  std::optional<SchedulerDecl> scheduler;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Diagnostic {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
  std::string token;

  // `<line>:<col>: error: <message> [token '<tok>']`
  std::string text() const;
};

struct ParseResult {
  std::optional<Document> document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return document.has_value(); }
};

ParseResult parse_config(std::string_view text);

// Canonical text; parse_config(render(d)) yields d again.
std::string render(const Document& doc);

// Everything needed to run the described system.
struct Loaded {
  acl::SystemConfig config;
  std::map<std::string, acl::Program> programs;
  acl::SchedulerSpec scheduler;
  std::uint64_t seed = 0;
  int trials = 1;
};

// Throws ConfigError for mnemonics with malformed arguments.
Loaded load(const Document& doc);

// One program from its mnemonics. Throws ConfigError naming the bad mnemonic.
acl::Program build_program(const std::vector<Mnemonic>& code);

// Parses the rendering produced by Expr::render; `program` supplies (and
// receives) variable names.
acl::Expr parse_expr(std::string_view text, acl::Program& program);

}  // namespace qacl::cli

#endif  // QACL_CLI_CONFIG_DOC_HPP_
