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

#ifndef QACL_ACL_CONFIG_HPP_
#define QACL_ACL_CONFIG_HPP_

#include <string>
#include <utility>
#include <vector>

#include "qacl/policy/models.hpp"

namespace qacl::acl {

struct RegisterDecl {
  std::string name;
  int size = 1;  // bit width for classical registers, qubits for quantum ones

  friend bool operator==(const RegisterDecl&, const RegisterDecl&) = default;
};

// Name-level object key: a single object, a set of quantum registers, or an
// attribute cell.
struct ObjectKey {
  enum class Kind { kName, kSet, kCell };

  Kind kind = Kind::kName;
  std::vector<std::string> names;  // kName: one entry; kSet: members; kCell: key
  std::string attr;                // kCell only

  static ObjectKey name(std::string n) { return {Kind::kName, {std::move(n)}, {}}; }
  static ObjectKey set(std::vector<std::string> members) {
    return {Kind::kSet, std::move(members), {}};
  }
  static ObjectKey cell(std::string attr, std::vector<std::string> key) {
    return {Kind::kCell, std::move(key), std::move(attr)};
  }

  friend bool operator==(const ObjectKey&, const ObjectKey&) = default;
};

struct Grant {
  std::string subject;
  ObjectKey object;
  std::vector<std::string> rights;

  friend bool operator==(const Grant&, const Grant&) = default;
};

struct FlagAssign {
  ObjectKey object;  // register name (ENT1) or a two-register set (ENT2)
  bool value = false;

  friend bool operator==(const FlagAssign&, const FlagAssign&) = default;
};

// Complete contents of the access matrices for one phase. Writing the phase
// tag replaces every Macc/Mc/Mq cell with the table's grants.
struct PhaseTable {
  std::vector<Grant> grants;
};

struct SystemConfig {
  std::string name = "system";
  policy::ModelSpec model;
  std::vector<std::string> subjects;
  std::vector<RegisterDecl> classical;
  std::vector<RegisterDecl> quantum;
  // Declared right labels. When empty, the rights mentioned by grants and
  // phase tables are declared.
  std::vector<std::string> rights;
  // Attributes exposed as guard objects in Obj_c (e.g. "Mq", "Me", "G").
  std::vector<std::string> guards;
  std::vector<Grant> grants;
  std::vector<std::pair<std::string, int>> groups;
  std::vector<FlagAssign> entangle_allow;
  std::vector<FlagAssign> disentangled;  // overrides of the default `true`
  std::vector<std::pair<std::string, int>> pools;  // naive model only
  // When non-empty, a `phase` guard object and tag cell are created and the
  // matrices start in phases[0]; `grants` is then ignored for Macc/Mc/Mq.
  std::vector<PhaseTable> phases;
};

}  // namespace qacl::acl

#endif  // QACL_ACL_CONFIG_HPP_
