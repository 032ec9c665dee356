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

#ifndef QACL_SCENARIO_ATTACK_HPP_
#define QACL_SCENARIO_ATTACK_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qacl/rng.hpp"
#include "qacl/scenario/breach.hpp"

namespace qacl::scenario {

using JointCounts = std::array<std::array<std::uint64_t, 2>, 2>;  // [secret][guess]

// Plug-in mutual information estimate in bits from a 2x2 table of counts.
double mutual_information(const JointCounts& joint);

// Seeded shuffle of floor(trials/2) zeros and ceil(trials/2) ones.
std::vector<int> balanced_secrets(int trials, Rng rng);

std::uint64_t trial_seed(std::uint64_t seed, int trial);

struct AttackConfig {
  Variant variant;
  int n = 4;
  int trials = 200;
  std::uint64_t seed = 0;
  // Classical variant only; defaults to the best deterministic tuple.
  std::optional<ClassicalStrategy> strategy;
};

struct AttackReport {
  std::string variant;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double success_rate = 0.0;
  double mi_bits = 0.0;
  // Distinct denied requests in history-line format, in first-seen order.
  std::vector<std::string> denials;
  std::uint64_t denied_requests = 0;
  std::vector<std::uint64_t> trial_seeds;
  JointCounts joint{};
  bool all_authorized = true;
  // Every trial ended with B = a xor E xor F, E the promise-input parity
  // bit v folded in and F the parity of authorized flips of B.
  bool parity_chain_holds = true;
  // Every trial had F = E.
  bool flips_match_promise = true;

  std::string text() const;
  // Canonical JSON: sorted keys, numbers rounded to 10 decimals.
  std::string json() const;
};

AttackReport run_attack(const AttackConfig& config);

}  // namespace qacl::scenario

#endif  // QACL_SCENARIO_ATTACK_HPP_
