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

#ifndef QACL_SCENARIO_EFFICIENCY_HPP_
#define QACL_SCENARIO_EFFICIENCY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qacl/acl/engine.hpp"
#include "qacl/policy/models.hpp"

namespace qacl::scenario {

// Cell count predicted for a system with M subjects, Nc classical and Nq
// quantum registers.
std::uint64_t closed_form_cells(const policy::ModelSpec& model, int M, int Nc, int Nq);

struct EfficiencyReport {
  policy::ModelSpec model;
  int M = 0;
  int Nc = 0;
  int Nq = 0;
  std::uint64_t cells = 0;
  std::uint64_t formula = 0;
  // auth_ops: gate request over the first x registers.
  // post_ops: post-update of an authorized `measure` on the same registers.
  std::vector<acl::OpSample> samples;
  double auth_slope = 0.0;  // max auth_ops / x
  double post_slope = 0.0;  // max post_ops / (x * Nq)

  bool match() const { return cells == formula; }
  // `cells=<n> formula=<n> match=<bool>` followed by one `ops` line per sample.
  std::string text() const;
};

// Everything is granted to the first subject so every check runs to the end.
// Lengths above Nq are rejected with ConfigError; CapacityError when the
// tables are too large.
EfficiencyReport efficiency_report(const policy::ModelSpec& model, int M, int Nc, int Nq,
                                   const std::vector<int>& lengths);

}  // namespace qacl::scenario

#endif  // QACL_SCENARIO_EFFICIENCY_HPP_
