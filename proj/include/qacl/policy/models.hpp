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

#ifndef QACL_POLICY_MODELS_HPP_
#define QACL_POLICY_MODELS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qacl/acl/attributes.hpp"
#include "qacl/acl/request.hpp"

namespace qacl::policy {

enum class ModelKind { kClassical, kNaive, kSubsys, kGrp, kEnt1, kEnt2 };

struct ModelSpec {
  ModelKind kind = ModelKind::kClassical;
  int k = 0;  // SUBSYS size bound or GRP label count; unused otherwise

  // `classical`, `naive`, `subsys:k=<int>`, `grp:k=<int>`, `ent1`, `ent2`.
  std::string id() const;
  // Throws ConfigError on unknown ids. Range checks on k need the system
  // shape and happen at compile time.
  static ModelSpec parse(std::string_view id);

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Abstract operation counter. Each right-set membership test, label
// comparison, and attribute-cell touch costs one unit, as does reading one
// element of the request.
struct OpCounter {
  std::uint64_t ops = 0;
  void add(std::uint64_t n = 1) { ops += n; }
};

// Cell index tables for one compiled system. Built once; the attribute values
// themselves live in an AttributeStore.
struct Layout {
  int num_subjects = 0;
  int num_classical = 0;
  int num_quantum = 0;

  int right_all = -1;
  int right_read = -1;
  int right_measure = -1;

  int attr_access = -1;  // Macc (classical, naive) or Mc
  int attr_mq = -1;
  int attr_group = -1;
  int attr_me = -1;
  int attr_d = -1;

  std::vector<int> classical_cells;  // [s * Nc + c]
  std::vector<int> quantum_cells;    // [s * Nq + q]; Macc or per-register Mq
  std::vector<std::unordered_map<std::uint64_t, int>> subset_cells;  // SUBSYS
  std::vector<int> group_cells;      // [q]
  std::vector<int> ent_cells;        // ENT1: [q], ENT2: [q1 * Nq + q2]
  std::vector<int> dis_cells;        // same shape as ent_cells
  std::vector<int> attr_guard;       // attribute -> guarding classical object
  std::unordered_map<int, int> me_to_d;  // ENT1 Me cell -> D cell
  std::unordered_map<int, std::pair<int, int>> me_pair;  // ENT2 Me cell -> (q1, q2)

  int pair_index(int q1, int q2) const { return q1 * num_quantum + q2; }
};

// Authorization predicate of the model. Pure with respect to the store.
bool authorize(const ModelSpec& model, const Layout& layout,
               const acl::AttributeStore& store, const acl::Request& request,
               OpCounter& counter);

// Attribute post-update applied after an authorized request has taken effect.
void post_update(const ModelSpec& model, const Layout& layout,
                 acl::AttributeStore& store, const acl::Request& request,
                 OpCounter& counter);

}  // namespace qacl::policy

#endif  // QACL_POLICY_MODELS_HPP_
