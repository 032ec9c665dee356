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

#ifndef QACL_SCENARIO_WITNESS_HPP_
#define QACL_SCENARIO_WITNESS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qacl::scenario {

struct WitnessRow {
  std::string system;     // "A" or a candidate label
  std::string execution;  // "P", "P'", ...
  bool generable = false;
  bool authorized = false;
  bool expected_generable = false;
  bool expected_authorized = false;

  bool ok() const {
    return generable == expected_generable && authorized == expected_authorized;
  }
};

// Result of materializing one flexibility comparison. `rows` cover the
// constructed system A and a representative candidate B; every candidate of
// the enumerated family is additionally checked to be distinguished from A
// by the execution suite.
struct WitnessReport {
  std::string pair;
  std::string claim;
  std::vector<WitnessRow> rows;
  std::size_t candidates = 0;
  std::size_t distinguished = 0;
  bool matches = false;

  std::string text() const;
};

// Canonical pair ids: subsys(k,k-1), grp(k,k-1), ent(1,2), subsys-vs-grp,
// ent-vs-subsys, grp-vs-subsysLtN, grp-vs-ent.
const std::vector<std::string>& witness_pairs();

// Throws ConfigError for unknown pairs. The seed only feeds measurement
// randomness; verdicts do not depend on it.
WitnessReport flexibility_witness(std::string_view pair, std::uint64_t seed = 0);

}  // namespace qacl::scenario

#endif  // QACL_SCENARIO_WITNESS_HPP_
