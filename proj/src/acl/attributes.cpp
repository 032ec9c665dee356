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

#include "qacl/acl/attributes.hpp"

#include <fmt/format.h>

#include "qacl/error.hpp"

namespace qacl::acl {

AttributeStore::AttributeStore() : layout_(std::make_shared<Layout>()) {}

AttributeStore::Layout& AttributeStore::mutable_layout() {
  if (layout_.use_count() > 1) layout_ = std::make_shared<Layout>(*layout_);
  return *layout_;
}

std::string AttributeStore::index_key(int attr, std::span<const std::string> key) {
  std::string s = std::to_string(attr);
  for (const auto& k : key) {
    s.push_back('\x1f');
    s += k;
  }
  return s;
}

int AttributeStore::add_attribute(std::string name, AttrKind kind, bool counted) {
  if (find_attribute(name) >= 0) {
    throw ConfigError(fmt::format("attribute {} declared twice", name));
  }
  Layout& l = mutable_layout();
  l.attrs.push_back(AttributeDef{std::move(name), kind, counted});
  return static_cast<int>(l.attrs.size()) - 1;
}

int AttributeStore::add_cell(int attr, std::vector<std::string> key,
                             std::uint64_t value) {
  Layout& l = mutable_layout();
  std::string ik = index_key(attr, key);
  if (l.index.count(ik)) {
    throw ConfigError("attribute cell declared twice");
  }
  const int cell = static_cast<int>(values_.size());
  l.index.emplace(std::move(ik), cell);
  l.cell_attr.push_back(attr);
  l.cell_key.push_back(std::move(key));
  values_.push_back(value);
  return cell;
}

int AttributeStore::find_attribute(std::string_view name) const {
  for (std::size_t i = 0; i < layout_->attrs.size(); ++i) {
    if (layout_->attrs[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int AttributeStore::find_cell(int attr, std::span<const std::string> key) const {
  if (attr < 0) return -1;
  auto it = layout_->index.find(index_key(attr, key));
  return it == layout_->index.end() ? -1 : it->second;
}

int AttributeStore::find_cell(std::string_view attr,
                              std::span<const std::string> key) const {
  return find_cell(find_attribute(attr), key);
}

std::size_t AttributeStore::counted_cells() const {
  std::size_t n = 0;
  for (int a : layout_->cell_attr) {
    if (layout_->attrs[static_cast<std::size_t>(a)].counted) ++n;
  }
  return n;
}

std::string AttributeStore::render_cell(int cell) const {
  return fmt::format("attr:{}[{}]", attribute(cell_attribute(cell)).name,
                     fmt::join(cell_key(cell), ","));
}

}  // namespace qacl::acl
