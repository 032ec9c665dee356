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

#ifndef QACL_ACL_ATTRIBUTES_HPP_
#define QACL_ACL_ATTRIBUTES_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qacl::acl {

enum class AttrKind { kRights, kBool, kLabel, kInt };

struct AttributeDef {
  std::string name;
  AttrKind kind = AttrKind::kInt;
  // Model attributes (access matrices, groups, entanglement flags) count
  // toward space usage; bookkeeping cells such as the phase tag do not.
  bool counted = true;
};

// Dense attribute storage: every cell is materialized up front, so each key
// addresses exactly one stored value. Copies share the immutable key layout.
class AttributeStore {
 public:
  AttributeStore();

  int add_attribute(std::string name, AttrKind kind, bool counted = true);
  int add_cell(int attr, std::vector<std::string> key, std::uint64_t value);

  int find_attribute(std::string_view name) const;
  // -1 when no such cell exists.
  int find_cell(int attr, std::span<const std::string> key) const;
  int find_cell(std::string_view attr, std::span<const std::string> key) const;

  std::uint64_t get(int cell) const { return values_[static_cast<std::size_t>(cell)]; }
  void set(int cell, std::uint64_t value) { values_[static_cast<std::size_t>(cell)] = value; }

  std::size_t cell_count() const { return values_.size(); }
  std::size_t counted_cells() const;
  std::size_t attribute_count() const { return layout_->attrs.size(); }
  const AttributeDef& attribute(int attr) const {
    return layout_->attrs[static_cast<std::size_t>(attr)];
  }
  int cell_attribute(int cell) const {
    return layout_->cell_attr[static_cast<std::size_t>(cell)];
  }
  const std::vector<std::string>& cell_key(int cell) const {
    return layout_->cell_key[static_cast<std::size_t>(cell)];
  }
  // `attr:<name>[<k1>,<k2>,...]`
  std::string render_cell(int cell) const;

  const std::vector<std::uint64_t>& values() const { return values_; }

 private:
  struct Layout {
    std::vector<AttributeDef> attrs;
    std::vector<int> cell_attr;
    std::vector<std::vector<std::string>> cell_key;
    std::unordered_map<std::string, int> index;
  };
  static std::string index_key(int attr, std::span<const std::string> key);
  Layout& mutable_layout();

  std::shared_ptr<Layout> layout_;
  std::vector<std::uint64_t> values_;
};

}  // namespace qacl::acl

#endif  // QACL_ACL_ATTRIBUTES_HPP_
