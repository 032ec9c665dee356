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

#include "qacl/acl/equivalence.hpp"

#include <algorithm>

#include "qacl/acl/engine.hpp"
#include "qacl/error.hpp"

namespace qacl::acl {

ExecutionOutcome evaluate(std::shared_ptr<const System> system, const Execution& execution) {
  ExecutionOutcome out;
  std::optional<Engine> engine;
  try {
    engine.emplace(std::move(system), execution.programs, execution.scheduler,
                   EngineOptions{execution.seed, DenialPolicy::kContinue, execution.max_slots});
  } catch (const RequestError& e) {
    out.generable = false;
    out.authorized = false;
    out.detail = e.what();
    return out;
  }
  engine->run();
  out.generable = true;
  const auto& h = engine->history();
  out.authorized = std::all_of(h.begin(), h.end(), [](const HistoryEntry& e) { return e.authorized; });
  out.detail = engine->export_history();
  return out;
}

EquivalenceResult check_equivalence(std::shared_ptr<const System> a,
                                    std::shared_ptr<const System> b,
                                    const std::vector<Execution>& suite) {
  EquivalenceResult result;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    result.left.push_back(evaluate(a, suite[i]));
    result.right.push_back(evaluate(b, suite[i]));
    if (!(result.left.back() == result.right.back()) && !result.first_difference) {
      result.first_difference = i;
      result.equivalent = false;
    }
  }
  return result;
}

}  // namespace qacl::acl
