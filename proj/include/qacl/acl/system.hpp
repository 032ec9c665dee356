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

#ifndef QACL_ACL_SYSTEM_HPP_
#define QACL_ACL_SYSTEM_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qacl/acl/attributes.hpp"
#include "qacl/acl/config.hpp"
#include "qacl/acl/request.hpp"
#include "qacl/policy/models.hpp"

namespace qacl::acl {

// Upper bound on materialized attribute cells for one system.
inline constexpr std::size_t kMaxAttributeCells = std::size_t{1} << 22;

// A validated, name-resolved SystemConfig with its initial attribute store.
// Immutable once compiled and shared by every engine built from it.
class System {
 public:
  // Throws ConfigError on inconsistent configuration and CapacityError when
  // the attribute tables would be too large.
  static std::shared_ptr<const System> compile(const SystemConfig& config);

  const SystemConfig& config() const { return config_; }
  const policy::ModelSpec& model() const { return config_.model; }
  const policy::Layout& layout() const { return layout_; }
  const AttributeStore& initial_attributes() const { return store_; }

  int num_subjects() const { return static_cast<int>(config_.subjects.size()); }
  const std::string& subject_name(int s) const {
    return config_.subjects[static_cast<std::size_t>(s)];
  }
  int find_subject(std::string_view name) const;

  // Classical objects: registers first, then attribute guard objects.
  int num_classical() const { return static_cast<int>(classical_names_.size()); }
  int num_classical_registers() const {
    return static_cast<int>(config_.classical.size());
  }
  const std::string& classical_name(int c) const {
    return classical_names_[static_cast<std::size_t>(c)];
  }
  bool is_guard(int c) const { return c >= num_classical_registers(); }
  int classical_width(int c) const;
  int find_classical(std::string_view name) const;

  int num_quantum() const { return static_cast<int>(config_.quantum.size()); }
  const std::string& quantum_name(int q) const {
    return config_.quantum[static_cast<std::size_t>(q)].name;
  }
  int quantum_size(int q) const {
    return config_.quantum[static_cast<std::size_t>(q)].size;
  }
  int first_qubit(int q) const { return first_qubit_[static_cast<std::size_t>(q)]; }
  int find_quantum(std::string_view name) const;

  int pool_first(int s) const { return pool_first_[static_cast<std::size_t>(s)]; }
  int pool_size(int s) const { return pool_size_[static_cast<std::size_t>(s)]; }
  int total_qubits() const { return total_qubits_; }

  int num_rights() const { return static_cast<int>(rights_.size()); }
  const std::string& right_name(int r) const { return rights_[static_cast<std::size_t>(r)]; }
  int find_right(std::string_view name) const;
  RightSet rights_mask(const std::vector<std::string>& names) const;

  // Phase tag support; phase_cell() is -1 when the system has no phases.
  int phase_cell() const { return phase_cell_; }
  std::size_t num_phases() const { return phase_tables_.size(); }
  void apply_phase(AttributeStore& store, std::uint64_t tag) const;

  ObjectRef quantum_object(std::vector<int> regs) const;

  std::string render_object(const ObjectRef& object) const;
  // `step=<n> subject=<id> object=<repr> right=<label> authorized=<bool>`
  std::string render(const HistoryEntry& entry) const;
  std::string render(const Request& request) const;

  // Materialized model attribute cells (registers, locals and the phase tag
  // excluded).
  std::size_t space_usage() const { return store_.counted_cells(); }

 private:
  System() = default;
  void build_attributes();
  void apply_grants(const std::vector<Grant>& grants,
                    std::vector<std::pair<int, RightSet>>* out);
  int grant_cell(int subject, const ObjectKey& key) const;

  SystemConfig config_;
  std::vector<std::string> classical_names_;
  std::vector<int> first_qubit_;
  std::vector<int> pool_first_;
  std::vector<int> pool_size_;
  int total_qubits_ = 0;
  std::vector<std::string> rights_;
  policy::Layout layout_;
  AttributeStore store_;
  int phase_cell_ = -1;
  std::vector<std::vector<std::pair<int, RightSet>>> phase_tables_;
  std::vector<int> phase_reset_cells_;
};

std::string render_history(const System& system, const History& history);

}  // namespace qacl::acl

#endif  // QACL_ACL_SYSTEM_HPP_
