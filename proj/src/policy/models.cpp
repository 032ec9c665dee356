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

#include "qacl/policy/models.hpp"

#include <charconv>

#include <fmt/format.h>

#include "qacl/error.hpp"

namespace qacl::policy {
namespace {

using acl::AttributeStore;
using acl::ObjectRef;
using acl::Request;
using acl::right_in;

bool granted(const Layout& l, const AttributeStore& store, int cell, int right,
             OpCounter& counter) {
  counter.add(2);  // cell touch + membership test
  if (cell < 0) return false;
  return right_in(store.get(cell), right, l.right_all);
}

// Shared rule for classical objects and attribute cells: the right must be
// present in the access row of the object (for cells, of the attribute's
// guard object).
bool authorize_classical_object(const Layout& l, const AttributeStore& store,
                                const Request& r, OpCounter& counter) {
  int c = r.object.index;
  if (r.object.kind == ObjectRef::Kind::kCell) {
    counter.add();
    const int attr = store.cell_attribute(r.object.index);
    c = l.attr_guard[static_cast<std::size_t>(attr)];
    if (c < 0) return false;
  }
  const int cell = l.classical_cells[static_cast<std::size_t>(
      r.subject * l.num_classical + c)];
  return granted(l, store, cell, r.right, counter);
}

bool per_register_rights(const Layout& l, const AttributeStore& store,
                         const Request& r, OpCounter& counter) {
  for (int q : r.object.regs) {
    const int cell = l.quantum_cells[static_cast<std::size_t>(
        r.subject * l.num_quantum + q)];
    if (!granted(l, store, cell, r.right, counter)) return false;
  }
  return true;
}

// p_e: a non-disentangled register whose flag is set may only be read.
bool ent_cell_guard(const ModelSpec& m, const Layout& l,
                    const AttributeStore& store, const Request& r,
                    OpCounter& counter) {
  if (r.object.kind != ObjectRef::Kind::kCell) return true;
  const int cell = r.object.index;
  if (store.cell_attribute(cell) != l.attr_me) return true;
  int d_cell = -1;
  if (m.kind == ModelKind::kEnt1) {
    auto it = l.me_to_d.find(cell);
    if (it == l.me_to_d.end()) return true;
    d_cell = it->second;
  } else {
    auto it = l.me_pair.find(cell);
    if (it == l.me_pair.end()) return true;
    d_cell = l.dis_cells[static_cast<std::size_t>(
        l.pair_index(it->second.first, it->second.second))];
  }
  counter.add(2);
  const bool disentangled = store.get(d_cell) != 0;
  const bool allowed = store.get(cell) != 0;
  if (!disentangled && allowed) {
    counter.add();
    return r.right == l.right_read;
  }
  return true;
}

}  // namespace

std::string ModelSpec::id() const {
  switch (kind) {
    case ModelKind::kClassical: return "classical";
    case ModelKind::kNaive: return "naive";
    case ModelKind::kSubsys: return fmt::format("subsys:k={}", k);
    case ModelKind::kGrp: return fmt::format("grp:k={}", k);
    case ModelKind::kEnt1: return "ent1";
    case ModelKind::kEnt2: return "ent2";
  }
  return "?";
}

ModelSpec ModelSpec::parse(std::string_view id) {
  if (id == "classical") return {ModelKind::kClassical, 0};
  if (id == "naive") return {ModelKind::kNaive, 0};
  if (id == "ent1") return {ModelKind::kEnt1, 1};
  if (id == "ent2") return {ModelKind::kEnt2, 2};
  for (auto [prefix, kind] : {std::pair{std::string_view("subsys:k="), ModelKind::kSubsys},
                              std::pair{std::string_view("grp:k="), ModelKind::kGrp}}) {
    if (id.substr(0, prefix.size()) != prefix) continue;
    const std::string_view digits = id.substr(prefix.size());
    int k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw ConfigError(fmt::format("bad model parameter in '{}'", id));
    }
    return {kind, k};
  }
  throw ConfigError(fmt::format("unknown model '{}'", id));
}

bool authorize(const ModelSpec& m, const Layout& l, const AttributeStore& store,
               const Request& r, OpCounter& counter) {
  if (r.object.kind != ObjectRef::Kind::kQuantum) {
    if (m.kind == ModelKind::kEnt1 || m.kind == ModelKind::kEnt2) {
      if (!ent_cell_guard(m, l, store, r, counter)) return false;
    }
    return authorize_classical_object(l, store, r, counter);
  }

  const auto& regs = r.object.regs;
  const std::size_t x = regs.size();
  counter.add(x);  // read the request
  switch (m.kind) {
    case ModelKind::kClassical:
      counter.add();
      if (x != 1) return false;
      return per_register_rights(l, store, r, counter);

    case ModelKind::kNaive:
      return per_register_rights(l, store, r, counter);

    case ModelKind::kSubsys: {
      counter.add();
      if (x > static_cast<std::size_t>(m.k)) return false;
      const auto& table = l.subset_cells[static_cast<std::size_t>(r.subject)];
      auto it = table.find(r.object.mask);
      return granted(l, store, it == table.end() ? -1 : it->second, r.right,
                     counter);
    }

    case ModelKind::kGrp: {
      counter.add();
      const std::uint64_t label =
          store.get(l.group_cells[static_cast<std::size_t>(regs[0])]);
      for (std::size_t i = 1; i < x; ++i) {
        counter.add(2);  // touch + compare
        if (store.get(l.group_cells[static_cast<std::size_t>(regs[i])]) != label) {
          return false;
        }
      }
      return per_register_rights(l, store, r, counter);
    }

    case ModelKind::kEnt1: {
      if (!per_register_rights(l, store, r, counter)) return false;
      if (x > 1) {
        for (int q : regs) {
          counter.add();
          if (store.get(l.ent_cells[static_cast<std::size_t>(q)]) == 0) return false;
        }
      }
      return true;
    }

    case ModelKind::kEnt2: {
      if (!per_register_rights(l, store, r, counter)) return false;
      for (std::size_t i = 0; i < x; ++i) {
        for (std::size_t j = i + 1; j < x; ++j) {
          counter.add();
          const int cell = l.ent_cells[static_cast<std::size_t>(
              l.pair_index(regs[i], regs[j]))];
          if (store.get(cell) == 0) return false;
        }
      }
      return true;
    }
  }
  return false;
}

void post_update(const ModelSpec& m, const Layout& l, AttributeStore& store,
                 const Request& r, OpCounter& counter) {
  if (r.object.kind != ObjectRef::Kind::kQuantum) return;
  if (m.kind != ModelKind::kEnt1 && m.kind != ModelKind::kEnt2) return;
  const auto& regs = r.object.regs;
  const std::size_t x = regs.size();
  counter.add();
  const bool measure = r.right == l.right_measure && l.right_measure >= 0;

  if (m.kind == ModelKind::kEnt1) {
    if (!measure && x <= 1) return;
    for (int q : regs) {
      counter.add();
      store.set(l.dis_cells[static_cast<std::size_t>(q)], measure ? 1 : 0);
    }
    return;
  }

  if (measure) {
    for (int q : regs) {
      for (int y = 0; y < l.num_quantum; ++y) {
        if (y == q) continue;
        counter.add();
        store.set(l.dis_cells[static_cast<std::size_t>(l.pair_index(q, y))], 1);
      }
    }
    return;
  }
  for (std::size_t i = 0; i < x; ++i) {
    for (std::size_t j = i + 1; j < x; ++j) {
      counter.add();
      store.set(l.dis_cells[static_cast<std::size_t>(l.pair_index(regs[i], regs[j]))], 0);
    }
  }
}

}  // namespace qacl::policy
