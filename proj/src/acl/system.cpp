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

#include "qacl/acl/system.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include <fmt/format.h>

#include "qacl/error.hpp"

namespace qacl::acl {
namespace {

using policy::ModelKind;

constexpr std::uint64_t kRightsEmpty = 0;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_unique(std::set<std::string>& seen, const std::string& name,
                  std::string_view what) {
  if (name.empty()) throw ConfigError(fmt::format("empty {} name", what));
  if (!seen.insert(name).second) {
    throw ConfigError(fmt::format("{} '{}' declared twice", what, name));
  }
}

bool is_access_model(ModelKind k) {
  return k == ModelKind::kClassical || k == ModelKind::kNaive;
}

}  // namespace

std::shared_ptr<const System> System::compile(const SystemConfig& config) {
  std::shared_ptr<System> sys(new System());
  sys->config_ = config;
  const SystemConfig& c = sys->config_;
  const ModelKind kind = c.model.kind;

  std::set<std::string> subjects, objects;
  for (const auto& s : c.subjects) check_unique(subjects, s, "subject");
  for (const auto& r : c.classical) {
    check_unique(objects, r.name, "object");
    if (r.size < 1 || r.size > 63) {
      throw ConfigError(fmt::format("classical register '{}' width {} out of range [1, 63]",
                                    r.name, r.size));
    }
    sys->classical_names_.push_back(r.name);
  }
  int qubit = 0;
  for (const auto& r : c.quantum) {
    check_unique(objects, r.name, "object");
    if (r.size < 1) {
      throw ConfigError(fmt::format("quantum register '{}' needs at least one qubit", r.name));
    }
    sys->first_qubit_.push_back(qubit);
    qubit += r.size;
  }
  if (c.quantum.size() > 63) throw CapacityError("more than 63 quantum registers");

  const int nq = static_cast<int>(c.quantum.size());
  if (kind == ModelKind::kSubsys && (c.model.k < 1 || c.model.k > std::max(nq, 1))) {
    throw ConfigError(fmt::format("k out of range [1, N_q] (k={}, N_q={})", c.model.k, nq));
  }
  if (kind == ModelKind::kGrp && c.model.k < 1) {
    throw ConfigError(fmt::format("k out of range [1, N_q] (k={}, N_q={})", c.model.k, nq));
  }

  sys->pool_first_.assign(c.subjects.size(), qubit);
  sys->pool_size_.assign(c.subjects.size(), 0);
  for (const auto& [subject, size] : c.pools) {
    if (kind != ModelKind::kNaive) {
      throw ConfigError("private qubit pools exist only in the naive model");
    }
    const int s = sys->find_subject(subject);
    if (s < 0) throw ConfigError(fmt::format("pool for undeclared subject '{}'", subject));
    if (size < 0) throw ConfigError("negative pool size");
    sys->pool_first_[static_cast<std::size_t>(s)] = qubit;
    sys->pool_size_[static_cast<std::size_t>(s)] = size;
    qubit += size;
  }
  sys->total_qubits_ = qubit;

  // Guard objects.
  std::vector<std::string> guards = c.guards;
  if (!c.phases.empty() &&
      std::find(guards.begin(), guards.end(), "phase") == guards.end()) {
    guards.push_back("phase");
  }
  for (const auto& g : guards) {
    check_unique(objects, g, "object");
    sys->classical_names_.push_back(g);
  }

  // Rights.
  if (!c.rights.empty()) {
    sys->rights_ = c.rights;
  } else {
    std::set<std::string> seen;
    auto collect = [&](const std::vector<Grant>& gs) {
      for (const auto& g : gs) {
        for (const auto& r : g.rights) {
          if (seen.insert(r).second) sys->rights_.push_back(r);
        }
      }
    };
    collect(c.grants);
    for (const auto& p : c.phases) collect(p.grants);
  }
  {
    std::set<std::string> seen;
    for (const auto& r : sys->rights_) check_unique(seen, r, "right");
  }
  if (sys->rights_.size() > 64) throw CapacityError("more than 64 declared rights");

  sys->build_attributes();
  return sys;
}

int System::find_subject(std::string_view name) const {
  for (std::size_t i = 0; i < config_.subjects.size(); ++i) {
    if (config_.subjects[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int System::classical_width(int c) const {
  return is_guard(c) ? 64 : config_.classical[static_cast<std::size_t>(c)].size;
}

int System::find_classical(std::string_view name) const {
  for (std::size_t i = 0; i < classical_names_.size(); ++i) {
    if (classical_names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int System::find_quantum(std::string_view name) const {
  for (std::size_t i = 0; i < config_.quantum.size(); ++i) {
    if (config_.quantum[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int System::find_right(std::string_view name) const {
  for (std::size_t i = 0; i < rights_.size(); ++i) {
    if (rights_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

RightSet System::rights_mask(const std::vector<std::string>& names) const {
  RightSet mask = kRightsEmpty;
  for (const auto& n : names) {
    const int r = find_right(n);
    if (r < 0) throw ConfigError(fmt::format("undeclared right '{}'", n));
    mask |= RightSet{1} << r;
  }
  return mask;
}

ObjectRef ObjectRef::quantum(std::vector<int> regs) {
  std::sort(regs.begin(), regs.end());
  regs.erase(std::unique(regs.begin(), regs.end()), regs.end());
  ObjectRef o;
  o.kind = Kind::kQuantum;
  for (int q : regs) o.mask |= std::uint64_t{1} << q;
  o.regs = std::move(regs);
  return o;
}

ObjectRef System::quantum_object(std::vector<int> regs) const {
  for (int q : regs) {
    if (q < 0 || q >= num_quantum()) throw RequestError("quantum register index out of range");
  }
  return ObjectRef::quantum(std::move(regs));
}

void System::build_attributes() {
  const SystemConfig& c = config_;
  const ModelKind kind = c.model.kind;
  const int ns = num_subjects();
  const int nc = num_classical();
  const int nq = num_quantum();
  policy::Layout& l = layout_;
  l.num_subjects = ns;
  l.num_classical = nc;
  l.num_quantum = nq;
  l.right_all = find_right("all");
  l.right_read = find_right("read");
  l.right_measure = find_right("measure");

  // Size check before allocating anything.
  std::uint64_t cells = static_cast<std::uint64_t>(ns) * static_cast<std::uint64_t>(nc);
  if (kind == ModelKind::kSubsys) {
    std::uint64_t subsets = 0;
    for (int j = 1; j <= c.model.k; ++j) subsets += binomial(static_cast<std::uint64_t>(nq), static_cast<std::uint64_t>(j));
    cells += static_cast<std::uint64_t>(ns) * subsets;
  } else {
    cells += static_cast<std::uint64_t>(ns) * static_cast<std::uint64_t>(nq);
  }
  if (kind == ModelKind::kEnt2) cells += binomial(static_cast<std::uint64_t>(nq), 2) * 2;
  if (cells > kMaxAttributeCells) {
    throw CapacityError(fmt::format("attribute tables need {} cells (limit {})", cells,
                                    kMaxAttributeCells));
  }

  auto sorted_names = [&](std::vector<int> regs) {
    std::vector<std::string> names;
    for (int q : regs) names.push_back(quantum_name(q));
    std::sort(names.begin(), names.end());
    return names;
  };

  const bool access = is_access_model(kind);
  l.attr_access = store_.add_attribute(access ? "Macc" : "Mc", AttrKind::kRights);
  l.classical_cells.resize(static_cast<std::size_t>(ns * nc));
  for (int s = 0; s < ns; ++s) {
    for (int o = 0; o < nc; ++o) {
      l.classical_cells[static_cast<std::size_t>(s * nc + o)] =
          store_.add_cell(l.attr_access, {subject_name(s), classical_name(o)}, kRightsEmpty);
    }
  }

  if (kind == ModelKind::kSubsys) {
    l.attr_mq = store_.add_attribute("Mq", AttrKind::kRights);
    l.subset_cells.resize(static_cast<std::size_t>(ns));
    for (int s = 0; s < ns; ++s) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nq); ++mask) {
        if (std::popcount(mask) > c.model.k) continue;
        std::vector<int> regs;
        for (int q = 0; q < nq; ++q) {
          if ((mask >> q) & 1ULL) regs.push_back(q);
        }
        std::vector<std::string> key{subject_name(s)};
        for (auto& n : sorted_names(regs)) key.push_back(std::move(n));
        l.subset_cells[static_cast<std::size_t>(s)][mask] =
            store_.add_cell(l.attr_mq, std::move(key), kRightsEmpty);
      }
    }
  } else {
    int attr = l.attr_access;
    if (!access) attr = l.attr_mq = store_.add_attribute("Mq", AttrKind::kRights);
    l.quantum_cells.resize(static_cast<std::size_t>(ns * nq));
    for (int s = 0; s < ns; ++s) {
      for (int q = 0; q < nq; ++q) {
        l.quantum_cells[static_cast<std::size_t>(s * nq + q)] =
            store_.add_cell(attr, {subject_name(s), quantum_name(q)}, kRightsEmpty);
      }
    }
  }

  if (kind == ModelKind::kGrp) {
    l.attr_group = store_.add_attribute("G", AttrKind::kLabel);
    for (int q = 0; q < nq; ++q) {
      l.group_cells.push_back(store_.add_cell(l.attr_group, {quantum_name(q)}, 1));
    }
  }
  if (kind == ModelKind::kEnt1) {
    l.attr_me = store_.add_attribute("Me", AttrKind::kBool);
    l.attr_d = store_.add_attribute("D", AttrKind::kBool);
    for (int q = 0; q < nq; ++q) {
      l.ent_cells.push_back(store_.add_cell(l.attr_me, {quantum_name(q)}, 0));
    }
    for (int q = 0; q < nq; ++q) {
      l.dis_cells.push_back(store_.add_cell(l.attr_d, {quantum_name(q)}, 1));
      l.me_to_d[l.ent_cells[static_cast<std::size_t>(q)]] = l.dis_cells.back();
    }
  }
  if (kind == ModelKind::kEnt2) {
    l.attr_me = store_.add_attribute("Me", AttrKind::kBool);
    l.attr_d = store_.add_attribute("D", AttrKind::kBool);
    l.ent_cells.assign(static_cast<std::size_t>(nq * nq), -1);
    l.dis_cells.assign(static_cast<std::size_t>(nq * nq), -1);
    for (int which = 0; which < 2; ++which) {
      for (int a = 0; a < nq; ++a) {
        for (int b = a + 1; b < nq; ++b) {
          const int cell = store_.add_cell(which == 0 ? l.attr_me : l.attr_d,
                                           sorted_names({a, b}), which == 0 ? 0 : 1);
          auto& table = which == 0 ? l.ent_cells : l.dis_cells;
          table[static_cast<std::size_t>(l.pair_index(a, b))] = cell;
          table[static_cast<std::size_t>(l.pair_index(b, a))] = cell;
          if (which == 0) l.me_pair[cell] = {a, b};
        }
      }
    }
  }

  if (!c.phases.empty()) {
    const int attr = store_.add_attribute("phase", AttrKind::kInt, false);
    phase_cell_ = store_.add_cell(attr, {}, 0);
  }

  // Guards refer to attributes by name.
  l.attr_guard.assign(store_.attribute_count(), -1);
  for (int o = num_classical_registers(); o < nc; ++o) {
    const int attr = store_.find_attribute(classical_name(o));
    if (attr < 0) {
      throw ConfigError(fmt::format("guard object '{}' names no attribute of model {}",
                                    classical_name(o), c.model.id()));
    }
    l.attr_guard[static_cast<std::size_t>(attr)] = o;
  }

  // Initial matrices.
  if (c.phases.empty()) {
    std::vector<std::pair<int, RightSet>> assigned;
    apply_grants(c.grants, &assigned);
    for (auto [cell, mask] : assigned) store_.set(cell, store_.get(cell) | mask);
  } else {
    for (const auto& table : c.phases) {
      std::vector<std::pair<int, RightSet>> assigned;
      apply_grants(table.grants, &assigned);
      phase_tables_.push_back(std::move(assigned));
    }
    for (std::size_t cell = 0; cell < store_.cell_count(); ++cell) {
      const int attr = store_.cell_attribute(static_cast<int>(cell));
      if (attr == l.attr_access || attr == l.attr_mq) {
        phase_reset_cells_.push_back(static_cast<int>(cell));
      }
    }
    apply_phase(store_, 0);
  }

  for (const auto& [reg, label] : c.groups) {
    if (kind != ModelKind::kGrp) throw ConfigError("group labels exist only in the GRP model");
    const int q = find_quantum(reg);
    if (q < 0) throw ConfigError(fmt::format("group for undeclared register '{}'", reg));
    if (label < 1 || label > c.model.k) {
      throw ConfigError(fmt::format("group label {} out of range [1, {}]", label, c.model.k));
    }
    store_.set(l.group_cells[static_cast<std::size_t>(q)], static_cast<std::uint64_t>(label));
  }

  auto flag_cell = [&](const FlagAssign& f, bool me) -> int {
    if (kind != ModelKind::kEnt1 && kind != ModelKind::kEnt2) {
      throw ConfigError("entanglement flags exist only in the ENT models");
    }
    std::vector<int> regs;
    for (const auto& n : f.object.names) {
      const int q = find_quantum(n);
      if (q < 0) throw ConfigError(fmt::format("undeclared quantum register '{}'", n));
      regs.push_back(q);
    }
    const auto& table = me ? l.ent_cells : l.dis_cells;
    if (kind == ModelKind::kEnt1) {
      if (regs.size() != 1) throw ConfigError("ENT1 flags are keyed by one register");
      return table[static_cast<std::size_t>(regs[0])];
    }
    if (regs.size() != 2 || regs[0] == regs[1]) {
      throw ConfigError("ENT2 flags are keyed by two distinct registers");
    }
    return table[static_cast<std::size_t>(l.pair_index(regs[0], regs[1]))];
  };
  for (const auto& f : c.entangle_allow) store_.set(flag_cell(f, true), f.value ? 1 : 0);
  for (const auto& f : c.disentangled) store_.set(flag_cell(f, false), f.value ? 1 : 0);
}

int System::grant_cell(int s, const ObjectKey& key) const {
  const ModelKind kind = config_.model.kind;
  const policy::Layout& l = layout_;
  if (key.kind == ObjectKey::Kind::kCell) {
    throw ConfigError("grants on attribute cells are not supported; grant the guard object");
  }
  std::vector<int> regs;
  if (key.kind == ObjectKey::Kind::kName) {
    const std::string& name = key.names.at(0);
    const int c = find_classical(name);
    if (c >= 0) return l.classical_cells[static_cast<std::size_t>(s * l.num_classical + c)];
    const int q = find_quantum(name);
    if (q < 0) throw ConfigError(fmt::format("undeclared object '{}'", name));
    regs.push_back(q);
  } else {
    for (const auto& name : key.names) {
      const int q = find_quantum(name);
      if (q < 0) throw ConfigError(fmt::format("undeclared quantum register '{}'", name));
      regs.push_back(q);
    }
  }
  const ObjectRef o = ObjectRef::quantum(regs);
  if (kind == ModelKind::kSubsys) {
    if (static_cast<int>(o.regs.size()) > config_.model.k) {
      throw ConfigError(fmt::format("subsystem of size {} exceeds k={}", o.regs.size(),
                                    config_.model.k));
    }
    return l.subset_cells[static_cast<std::size_t>(s)].at(o.mask);
  }
  if (o.regs.size() != 1) {
    throw ConfigError(fmt::format("model {} grants rights per register", config_.model.id()));
  }
  return l.quantum_cells[static_cast<std::size_t>(s * l.num_quantum + o.regs[0])];
}

void System::apply_grants(const std::vector<Grant>& grants,
                          std::vector<std::pair<int, RightSet>>* out) {
  for (const auto& g : grants) {
    const int s = find_subject(g.subject);
    if (s < 0) throw ConfigError(fmt::format("grant for undeclared subject '{}'", g.subject));
    out->emplace_back(grant_cell(s, g.object), rights_mask(g.rights));
  }
}

void System::apply_phase(AttributeStore& store, std::uint64_t tag) const {
  if (tag >= phase_tables_.size()) {
    throw EffectError(fmt::format("phase {} has no table", tag));
  }
  for (int cell : phase_reset_cells_) store.set(cell, kRightsEmpty);
  for (auto [cell, mask] : phase_tables_[tag]) store.set(cell, store.get(cell) | mask);
  store.set(phase_cell_, tag);
}

std::string System::render_object(const ObjectRef& o) const {
  switch (o.kind) {
    case ObjectRef::Kind::kClassical:
      return "c:" + classical_name(o.index);
    case ObjectRef::Kind::kCell:
      return store_.render_cell(o.index);
    case ObjectRef::Kind::kQuantum: {
      std::vector<std::string> names;
      for (int q : o.regs) names.push_back(quantum_name(q));
      std::sort(names.begin(), names.end());
      return fmt::format("q:{{{}}}", fmt::join(names, ","));
    }
  }
  return "?";
}

std::string System::render(const Request& r) const {
  return fmt::format("subject={} object={} right={}", subject_name(r.subject),
                     render_object(r.object), right_name(r.right));
}

std::string System::render(const HistoryEntry& e) const {
  return fmt::format("step={} {} authorized={}", e.step, render(e.request),
                     e.authorized ? "true" : "false");
}

std::string render_history(const System& system, const History& history) {
  std::string out;
  for (const auto& e : history) {
    out += system.render(e);
    out.push_back('\n');
  }
  return out;
}

}  // namespace qacl::acl
