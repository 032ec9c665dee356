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

#ifndef QACL_ACL_ENGINE_HPP_
#define QACL_ACL_ENGINE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qacl/acl/attributes.hpp"
#include "qacl/acl/program.hpp"
#include "qacl/acl/request.hpp"
#include "qacl/acl/scheduler.hpp"
#include "qacl/acl/system.hpp"
#include "qacl/policy/models.hpp"
#include "qacl/quantum/state.hpp"
#include "qacl/rng.hpp"

namespace qacl::acl {

enum class DenialPolicy { kContinue, kHaltSubject };

struct EngineOptions {
  std::uint64_t seed = 0;
  DenialPolicy denial = DenialPolicy::kContinue;
  std::size_t max_slots = 1'000'000;
};

struct StepResult {
  enum class Kind { kRequest, kSkip, kFinished };
  Kind kind = Kind::kFinished;
  int subject = -1;
  std::optional<HistoryEntry> entry;
};

struct OpSample {
  std::size_t length = 0;      // request length x
  std::uint64_t auth_ops = 0;  // authorization cost
  std::uint64_t post_ops = 0;  // post-update cost (authorized requests only)
};

// Reference monitor plus runtime: steps subjects as chosen by the scheduler,
// authorizes each request against the system's model, applies its effect and
// the model's post-update, and records the history.
class Engine {
 public:
  // Programs are keyed by subject name; subjects without one halt at once.
  // Throws RequestError when a program names an undeclared right or object,
  // EffectError for bad offsets or pool misuse, CapacityError when the
  // system needs more qubits than the simulator allows.
  Engine(std::shared_ptr<const System> system,
         const std::map<std::string, Program>& programs,
         const SchedulerSpec& scheduler, EngineOptions options = {});

  StepResult step();
  // Steps until every subject halts or the slot limit is reached.
  void run();
  bool finished() const { return finished_; }

  // Model verdict for `request` in the current state. Records an OpSample.
  bool authorize(const Request& request);
  // Same verdict without touching metrics.
  bool check(const Request& request) const;

  const System& system() const { return *system_; }
  const History& history() const { return history_; }
  const AttributeStore& attributes() const { return store_; }
  const quantum::StateVector& state() const { return state_; }
  const std::vector<OpSample>& op_metrics() const { return metrics_; }
  std::size_t slots_used() const { return slots_; }
  bool halted(std::string_view subject) const;

  std::int64_t classical_value(std::string_view name) const;
  std::int64_t local(std::string_view subject, std::string_view var) const;
  std::optional<std::int64_t> find_local(std::string_view subject,
                                         std::string_view var) const;

  // Objects whose `read` verdict for `subject` is true now, plus "L" for the
  // subject's own locals.
  std::vector<std::string> observable(std::string_view subject) const;

  std::string export_history() const { return render_history(*system_, history_); }

  // Rolling hash of a request sequence, as consumed by prefix-function
  // schedulers. Start from kEmptyPrefixHash.
  static constexpr std::uint64_t kEmptyPrefixHash = 0xcbf29ce484222325ULL;
  static std::uint64_t extend_hash(std::uint64_t hash, const Request& request);

 private:
  struct Linked;
  struct LinkedProgram;

  Linked link(int subject, const Program& program, const Instruction& instr) const;
  void advance_locals(int subject);
  void execute_local(int subject, const Linked& instr);
  void apply_effect(int subject, const Linked& instr, const Request& request);
  std::uint64_t measure_qubits(const std::vector<int>& qubits);

  std::shared_ptr<const System> system_;
  EngineOptions options_;
  Scheduler scheduler_;
  Rng rng_;
  AttributeStore store_;
  quantum::StateVector state_;
  std::vector<std::int64_t> classical_;
  std::vector<std::vector<std::int64_t>> locals_;
  std::vector<std::shared_ptr<LinkedProgram>> programs_;
  std::vector<std::size_t> pc_;
  std::vector<bool> halted_;
  History history_;
  std::vector<OpSample> metrics_;
  std::uint64_t prefix_hash_ = kEmptyPrefixHash;
  std::size_t slots_ = 0;
  bool finished_ = false;
};

}  // namespace qacl::acl

#endif  // QACL_ACL_ENGINE_HPP_
