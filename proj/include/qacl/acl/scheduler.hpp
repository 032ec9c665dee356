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

#ifndef QACL_ACL_SCHEDULER_HPP_
#define QACL_ACL_SCHEDULER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qacl/rng.hpp"

namespace qacl::acl {

struct SchedulerSpec {
  enum class Kind { kScripted, kRoundRobin, kSeededRandom, kPrefixFunction };

  Kind kind = Kind::kRoundRobin;
  // kScripted: subject per slot; falls back to round-robin once exhausted.
  std::vector<std::string> script;
  // kSeededRandom
  std::uint64_t seed = 0;
  // kPrefixFunction: hash of the request history so far -> subject.
  std::unordered_map<std::uint64_t, std::string> prefix_table;
  std::string fallback;

  static SchedulerSpec scripted(std::vector<std::string> script);
  static SchedulerSpec round_robin();
  static SchedulerSpec seeded_random(std::uint64_t seed);
  static SchedulerSpec prefix_function(
      std::unordered_map<std::uint64_t, std::string> table, std::string fallback);
};

// Running scheduler bound to a subject list. `next` returns the subject for
// the coming slot, or nullopt when scheduling has ended. A returned subject may
// be halted; the engine turns that slot into a skip.
class Scheduler {
 public:
  Scheduler(const SchedulerSpec& spec, const std::vector<std::string>& subjects);

  std::optional<int> next(const std::vector<bool>& halted, std::uint64_t prefix_hash);

 private:
  std::optional<int> next_round_robin(const std::vector<bool>& halted);

  SchedulerSpec::Kind kind_;
  std::vector<int> script_;
  std::size_t cursor_ = 0;
  int rr_next_ = 0;
  int num_subjects_;
  Rng rng_;
  std::unordered_map<std::uint64_t, int> prefix_;
  int fallback_ = -1;
};

}  // namespace qacl::acl

#endif  // QACL_ACL_SCHEDULER_HPP_
