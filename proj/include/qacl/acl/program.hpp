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

#ifndef QACL_ACL_PROGRAM_HPP_
#define QACL_ACL_PROGRAM_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qacl/acl/expr.hpp"
#include "qacl/quantum/state.hpp"

namespace qacl::acl {

// A qubit named by register and offset, or a qubit of the executing
// subject's private pool (naive model only).
struct QubitRef {
  std::string reg;
  int offset = 0;
  bool pool = false;

  static QubitRef at(std::string reg, int offset = 0) {
    return {std::move(reg), offset, false};
  }
  static QubitRef pool_qubit(int offset) { return {{}, offset, true}; }

  friend bool operator==(const QubitRef&, const QubitRef&) = default;
};

struct CellName {
  std::string attr;
  std::vector<std::string> key;

  friend bool operator==(const CellName&, const CellName&) = default;
};

// Request-emitting instructions. On a quantum register, write/read act on
// qubit `bit` (or every qubit when absent) through a measurement, followed by
// an X correction for writes.
struct WriteClassical {
  std::string object;
  std::optional<int> bit;
  Expr value;
  std::string right = "write";
};

struct ReadClassical {
  std::string object;
  std::optional<int> bit;
  int var = 0;
  std::string right = "read";
};

// Gates touching only pool qubits run locally without a request. A false
// `condition` applies IDENTITY instead, under the same request.
struct ApplyGate {
  quantum::GateKind kind = quantum::GateKind::kIdentity;
  std::vector<QubitRef> targets;
  std::string right;
  std::optional<Expr> condition;
};

// Complete measurement of every qubit of the listed registers. The outcome
// stored in `var` has the first register's qubits in its low bits.
struct MeasureQ {
  std::vector<std::string> registers;
  int var = 0;
  std::string right = "measure";
};

// If `condition` holds, request `right` on `object` and complement it.
// Otherwise emit an IDENTITY request on `identity_register` when given, or
// spend the slot doing nothing.
struct FlipIf {
  Expr condition;
  std::string object;
  std::string right = "flip";
  std::optional<std::string> identity_register;
  std::string identity_right = "all";
};

struct SetAttrCell {
  CellName cell;
  Expr value;                              // used when rights is empty
  std::optional<std::vector<std::string>> rights;  // right-set cells
  std::string right = "write";
};

struct ReadAttrCell {
  CellName cell;
  int var = 0;
  std::string right = "read";
};

// Local instructions: no request, no slot.
struct SampleUniform {
  int var = 0;
  int bits = 1;
  std::optional<int> parity;  // uniform over bitstrings with this parity
};

struct SampleBit {
  int var = 0;
  double p = 0.5;  // probability of 1
};

struct Assign {
  int var = 0;
  Expr value;
};

struct Skip {};
struct Halt {};

using Instruction =
    std::variant<WriteClassical, ReadClassical, ApplyGate, MeasureQ, FlipIf,
                 SetAttrCell, ReadAttrCell, SampleUniform, SampleBit, Assign,
                 Skip, Halt>;

struct Program {
  std::vector<std::string> vars;
  std::vector<Instruction> code;

  // Index of a local variable, creating it on first use.
  int var(std::string_view name);
  int find_var(std::string_view name) const;
  Program& add(Instruction instr) {
    code.push_back(std::move(instr));
    return *this;
  }
};

}  // namespace qacl::acl

#endif  // QACL_ACL_PROGRAM_HPP_
