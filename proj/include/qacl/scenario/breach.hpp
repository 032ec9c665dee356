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

#ifndef QACL_SCENARIO_BREACH_HPP_
#define QACL_SCENARIO_BREACH_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qacl/acl/program.hpp"
#include "qacl/acl/system.hpp"
#include "qacl/mermin/game.hpp"

namespace qacl::scenario {

enum class VariantKind { kClassical, kNaive, kSubsys, kGrp, kEnt1, kEnt2 };

struct Variant {
  VariantKind kind = VariantKind::kNaive;
  int k = 0;

  // `classical`, `naive`, `subsys:k=<k>`, `grp:k=<k>`, `ent1`, `ent2`.
  std::string id() const;
  // Bare `subsys` means k=2 and bare `grp` means k=n+1.
  static Variant parse(std::string_view id, int n);
  bool lifted() const {
    return kind != VariantKind::kClassical && kind != VariantKind::kNaive;
  }
};

// Response of the colluding subjects in the classical variant. w_1 draws a
// shared bit lambda (1 with probability p_shared) and distributes it through
// the spare bit of every C_j; player j then answers with
// (lambda ? when_one : when_zero)[j] applied to x_j. w_1's final guess is
// folded into its own map.
struct ClassicalStrategy {
  double p_shared = 0.0;
  mermin::DeterministicStrategy when_zero;
  mermin::DeterministicStrategy when_one;

  static ClassicalStrategy pure(mermin::DeterministicStrategy s);
  mermin::MixedStrategy as_mixed() const;
};

// The breach scenario: u writes a secret bit into A, v later copies it into
// B masked by a parity-promise input, and w_1..w_n (who may only read B after
// the masking) try to recover it by playing the parity game through C_j.
class BreachScenario {
 public:
  // Throws ConfigError for n < 2 or bad variant parameters.
  static BreachScenario build(const Variant& variant, int n);

  const Variant& variant() const { return variant_; }
  int n() const { return n_; }
  const std::shared_ptr<const acl::System>& system() const { return system_; }
  const std::vector<std::string>& script() const { return script_; }

  // Programs for one trial. `strategy` is required for the classical variant
  // and ignored otherwise.
  std::map<std::string, acl::Program> programs(int secret,
                                               const ClassicalStrategy* strategy = nullptr) const;

  // Probe programs for the entanglements the lifted SUBSYS/GRP systems are
  // meant to allow: (C1,D1) by w1, (C2,D2) by w2, and the chain D3-D4-D5 by w3.
  std::map<std::string, acl::Program> permitted_probe() const;

 private:
  Variant variant_;
  int n_ = 0;
  std::shared_ptr<const acl::System> system_;
  std::vector<std::string> script_;
};

std::string player(int j);      // "w<j>", 1-based
std::string channel(int j);     // "C<j>", 1-based
std::string ancilla(int l);     // "D<l>", 1-based

inline constexpr int kAncillaCount = 5;
inline constexpr int kRounds = 5;

}  // namespace qacl::scenario

#endif  // QACL_SCENARIO_BREACH_HPP_
