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

#ifndef QACL_ACL_EQUIVALENCE_HPP_
#define QACL_ACL_EQUIVALENCE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qacl/acl/program.hpp"
#include "qacl/acl/scheduler.hpp"
#include "qacl/acl/system.hpp"

namespace qacl::acl {

// One execution (S, P): a scheduler and a program per subject.
struct Execution {
  std::string label;
  SchedulerSpec scheduler;
  std::map<std::string, Program> programs;
  std::uint64_t seed = 0;
  std::size_t max_slots = 10'000;
};

struct ExecutionOutcome {
  bool generable = false;   // false when the programs cannot be linked
  bool authorized = false;  // every request in the history was authorized
  std::string detail;       // exported history, or the link error

  friend bool operator==(const ExecutionOutcome& a, const ExecutionOutcome& b) {
    return a.generable == b.generable && a.authorized == b.authorized;
  }
};

ExecutionOutcome evaluate(std::shared_ptr<const System> system, const Execution& execution);

struct EquivalenceResult {
  bool equivalent = true;
  std::vector<ExecutionOutcome> left;
  std::vector<ExecutionOutcome> right;
  std::optional<std::size_t> first_difference;
};

// Runs every execution of the suite in both systems and compares
// (generable, authorized). Agreement on the suite is evidence, not proof.
EquivalenceResult check_equivalence(std::shared_ptr<const System> a,
                                    std::shared_ptr<const System> b,
                                    const std::vector<Execution>& suite);

}  // namespace qacl::acl

#endif  // QACL_ACL_EQUIVALENCE_HPP_
