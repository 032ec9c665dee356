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

#include "qacl/scenario/breach.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "qacl/error.hpp"

namespace qacl::scenario {
namespace {

using acl::ApplyGate;
using acl::CellName;
using acl::Expr;
using acl::FlipIf;
using acl::Grant;
using acl::MeasureQ;
using acl::ObjectKey;
using acl::Program;
using acl::QubitRef;
using acl::ReadClassical;
using acl::SetAttrCell;
using acl::WriteClassical;
using quantum::GateKind;

const std::vector<std::string> kAll = {"all"};

Grant grant(std::string subject, std::string object, std::vector<std::string> rights) {
  return Grant{std::move(subject), ObjectKey::name(std::move(object)), std::move(rights)};
}

Grant grant_pair(std::string subject, std::string a, std::string b) {
  return Grant{std::move(subject), ObjectKey::set({std::move(a), std::move(b)}), kAll};
}

// Lifted systems allow w1 to entangle C1 with D1, w2 to entangle C2 with D2,
// and one helper to chain D3-D4-D5.
int chain_owner(int n) { return std::min(3, n); }

std::vector<std::string> guards_for(VariantKind kind) {
  switch (kind) {
    case VariantKind::kSubsys: return {"Mc", "Mq"};
    case VariantKind::kGrp: return {"Mc", "Mq", "G"};
    case VariantKind::kEnt1:
    case VariantKind::kEnt2: return {"Mc", "Mq", "Me", "D"};
    default: return {};
  }
}

Expr strategy_expr(const ClassicalStrategy& s, int j, int c_var) {
  const Expr x = Expr::bit(Expr::var(c_var), 0);
  const Expr lambda = Expr::bit(Expr::var(c_var), 1);
  auto map_expr = [&](mermin::LocalMap m) {
    const int c = mermin::apply(m, 0);
    const int d = mermin::apply(m, 1) ^ c;
    return Expr::bxor(Expr::constant(c), Expr::band(Expr::constant(d), x));
  };
  const auto idx = static_cast<std::size_t>(j - 1);
  return Expr::bxor(Expr::band(Expr::lnot(lambda), map_expr(s.when_zero[idx])),
                    Expr::band(lambda, map_expr(s.when_one[idx])));
}

}  // namespace

std::string player(int j) { return fmt::format("w{}", j); }
std::string channel(int j) { return fmt::format("C{}", j); }
std::string ancilla(int l) { return fmt::format("D{}", l); }

std::string Variant::id() const {
  switch (kind) {
    case VariantKind::kClassical: return "classical";
    case VariantKind::kNaive: return "naive";
    case VariantKind::kSubsys: return fmt::format("subsys:k={}", k);
    case VariantKind::kGrp: return fmt::format("grp:k={}", k);
    case VariantKind::kEnt1: return "ent1";
    case VariantKind::kEnt2: return "ent2";
  }
  return "?";
}

Variant Variant::parse(std::string_view id, int n) {
  if (id == "classical") return {VariantKind::kClassical, 0};
  if (id == "naive") return {VariantKind::kNaive, 0};
  if (id == "ent1") return {VariantKind::kEnt1, 1};
  if (id == "ent2") return {VariantKind::kEnt2, 2};
  if (id == "subsys") return {VariantKind::kSubsys, 2};
  if (id == "grp") return {VariantKind::kGrp, n + 1};
  try {
    const policy::ModelSpec m = policy::ModelSpec::parse(id);
    if (m.kind == policy::ModelKind::kSubsys) return {VariantKind::kSubsys, m.k};
    if (m.kind == policy::ModelKind::kGrp) return {VariantKind::kGrp, m.k};
  } catch (const ConfigError&) {
  }
  throw ConfigError(fmt::format("unknown breach variant '{}'", id));
}

ClassicalStrategy ClassicalStrategy::pure(mermin::DeterministicStrategy s) {
  return ClassicalStrategy{0.0, s, s};
}

mermin::MixedStrategy ClassicalStrategy::as_mixed() const {
  mermin::MixedStrategy m;
  if (p_shared < 1.0) m.components.emplace_back(1.0 - p_shared, when_zero);
  if (p_shared > 0.0) m.components.emplace_back(p_shared, when_one);
  return m;
}

BreachScenario BreachScenario::build(const Variant& variant, int n) {
  if (n < 2) throw ConfigError(fmt::format("breach needs n >= 2 colluding subjects, got {}", n));
  BreachScenario b;
  b.variant_ = variant;
  b.n_ = n;
  const VariantKind kind = variant.kind;
  const bool lifted = variant.lifted();
  const bool classical = kind == VariantKind::kClassical;

  acl::SystemConfig cfg;
  cfg.name = "breach";
  switch (kind) {
    case VariantKind::kClassical: cfg.model = {policy::ModelKind::kClassical, 0}; break;
    case VariantKind::kNaive: cfg.model = {policy::ModelKind::kNaive, 0}; break;
    case VariantKind::kSubsys:
      if (variant.k < 2) throw ConfigError("the SUBSYS lifting needs k >= 2");
      cfg.model = {policy::ModelKind::kSubsys, variant.k};
      break;
    case VariantKind::kGrp:
      if (variant.k < n + 1) {
        throw ConfigError(fmt::format("the GRP lifting needs k >= n+1 = {}", n + 1));
      }
      cfg.model = {policy::ModelKind::kGrp, variant.k};
      break;
    case VariantKind::kEnt1: cfg.model = {policy::ModelKind::kEnt1, 1}; break;
    case VariantKind::kEnt2: cfg.model = {policy::ModelKind::kEnt2, 2}; break;
  }

  cfg.subjects = {"u", "v"};
  for (int j = 1; j <= n; ++j) cfg.subjects.push_back(player(j));
  cfg.classical = {{"A", 1}, {"B", 1}};
  for (int j = 1; j <= n; ++j) {
    if (classical) {
      cfg.classical.push_back({channel(j), 2});
    } else {
      cfg.quantum.push_back({channel(j), 2});
    }
  }
  if (lifted) {
    for (int l = 1; l <= kAncillaCount; ++l) cfg.quantum.push_back({ancilla(l), 1});
  }
  if (kind == VariantKind::kNaive) cfg.pools.push_back({player(1), n});
  cfg.rights = {"read", "write", "flip", "all"};
  if (lifted) cfg.rights.push_back("measure");
  cfg.guards = guards_for(kind);

  // Phase tables M0, M1, M2.
  auto common = [&](std::vector<Grant>& g) {
    g.push_back(grant("v", "phase", kAll));
    if (!lifted) return;
    for (const auto& guard : cfg.guards) g.push_back(grant("v", guard, kAll));
    for (const auto& s : cfg.subjects) {
      for (int l = 1; l <= kAncillaCount; ++l) g.push_back(grant(s, ancilla(l), kAll));
    }
    if (kind == VariantKind::kSubsys) {
      const std::string helper = player(chain_owner(n));
      g.push_back(grant_pair(player(1), channel(1), ancilla(1)));
      g.push_back(grant_pair(player(2), channel(2), ancilla(2)));
      g.push_back(grant_pair(helper, ancilla(3), ancilla(4)));
      g.push_back(grant_pair(helper, ancilla(4), ancilla(5)));
    }
  };
  acl::PhaseTable m0, m1, m2;
  m0.grants.push_back(grant("u", "A", {"write"}));
  for (int j = 1; j <= n; ++j) {
    for (int l = 1; l <= n; ++l) m0.grants.push_back(grant(player(j), channel(l), kAll));
    if (lifted) m0.grants.push_back(grant("v", channel(j), kAll));
  }
  common(m0.grants);
  m1.grants.push_back(grant("v", "A", {"read"}));
  m1.grants.push_back(grant("v", "B", kAll));
  for (int j = 1; j <= n; ++j) {
    m1.grants.push_back(grant("v", channel(j), kAll));
    m1.grants.push_back(grant(player(j), channel(j), kAll));
    m1.grants.push_back(grant(player(j), "B", {"flip"}));
  }
  common(m1.grants);
  for (int j = 1; j <= n; ++j) {
    m2.grants.push_back(grant(player(j), channel(j), kAll));
    m2.grants.push_back(grant(player(j), "B", {"read"}));
  }
  common(m2.grants);
  cfg.phases = {m0, m1, m2};

  if (kind == VariantKind::kGrp) {
    for (int j = 1; j <= n; ++j) cfg.groups.push_back({channel(j), j});
    cfg.groups.push_back({ancilla(1), 1});
    cfg.groups.push_back({ancilla(2), 2});
    for (int l = 3; l <= kAncillaCount; ++l) cfg.groups.push_back({ancilla(l), n + 1});
  }
  if (kind == VariantKind::kEnt1) {
    for (int j = 1; j <= n; ++j) cfg.entangle_allow.push_back({ObjectKey::name(channel(j)), true});
    for (int l = 1; l <= kAncillaCount; ++l) {
      cfg.entangle_allow.push_back({ObjectKey::name(ancilla(l)), true});
    }
  }
  if (kind == VariantKind::kEnt2) {
    for (int a = 1; a <= n; ++a) {
      for (int c = a + 1; c <= n; ++c) {
        cfg.entangle_allow.push_back({ObjectKey::set({channel(a), channel(c)}), true});
      }
    }
    const std::vector<std::pair<std::string, std::string>> permitted = {
        {channel(1), ancilla(1)}, {channel(2), ancilla(2)}, {ancilla(3), ancilla(4)},
        {ancilla(4), ancilla(5)}, {ancilla(3), ancilla(5)}};
    for (const auto& [a, c] : permitted) {
      cfg.entangle_allow.push_back({ObjectKey::set({a, c}), true});
    }
  }
  b.system_ = acl::System::compile(cfg);

  // Slot script.
  std::size_t prefix = 0;
  if (kind == VariantKind::kEnt1) prefix = static_cast<std::size_t>(2 * n);
  if (kind == VariantKind::kEnt2) prefix = static_cast<std::size_t>(n + n * (n - 1) / 2);
  auto& s = b.script_;
  s.push_back("u");
  s.insert(s.end(), prefix, "v");
  s.insert(s.end(), static_cast<std::size_t>(2 * n), player(1));
  s.insert(s.end(), static_cast<std::size_t>(n + 3), "v");
  for (int k = 0; k < kRounds; ++k) {
    for (int j = 1; j <= n; ++j) s.push_back(player(j));
  }
  s.push_back("v");
  s.push_back(player(1));
  return b;
}

std::map<std::string, Program> BreachScenario::programs(int secret,
                                                        const ClassicalStrategy* strategy) const {
  const int n = n_;
  const VariantKind kind = variant_.kind;
  const bool classical = kind == VariantKind::kClassical;
  const bool lifted = variant_.lifted();
  const std::string measure_right = lifted ? "measure" : "all";
  if (classical) {
    if (!strategy) throw ConfigError("the classical variant needs a strategy");
    if (static_cast<int>(strategy->when_zero.size()) != n ||
        static_cast<int>(strategy->when_one.size()) != n) {
      throw ConfigError(fmt::format("strategy must cover {} players", n));
    }
  }
  std::map<std::string, Program> out;

  Program& pu = out["u"];
  pu.add(WriteClassical{"A", std::nullopt, Expr::constant(secret & 1), "write"});

  Program& pv = out["v"];
  if (kind == VariantKind::kEnt1) {
    const int m = pv.var("m");
    for (int j = 1; j <= n; ++j) {
      pv.add(MeasureQ{{channel(j)}, m, "measure"});
      pv.add(SetAttrCell{CellName{"Me", {channel(j)}}, Expr::constant(0), std::nullopt, "write"});
    }
  }
  if (kind == VariantKind::kEnt2) {
    const int m = pv.var("m");
    for (int j = 1; j <= n; ++j) pv.add(MeasureQ{{channel(j)}, m, "measure"});
    for (int a = 1; a <= n; ++a) {
      for (int c = a + 1; c <= n; ++c) {
        pv.add(SetAttrCell{CellName{"Me", {channel(a), channel(c)}}, Expr::constant(0),
                           std::nullopt, "write"});
      }
    }
  }
  {
    const int x = pv.var("x");
    const int e = pv.var("e");
    const int a = pv.var("a");
    pv.add(SetAttrCell{CellName{"phase", {}}, Expr::constant(1), std::nullopt, "write"});
    pv.add(acl::SampleUniform{x, n, 0});
    pv.add(acl::Assign{e, Expr::half_parity(Expr::var(x))});
    for (int j = 1; j <= n; ++j) {
      pv.add(WriteClassical{channel(j), 0, Expr::bit(Expr::var(x), j - 1), "write"});
    }
    pv.add(ReadClassical{"A", std::nullopt, a, "read"});
    pv.add(WriteClassical{"B", std::nullopt, Expr::bxor(Expr::var(a), Expr::var(e)), "write"});
    pv.add(SetAttrCell{CellName{"phase", {}}, Expr::constant(2), std::nullopt, "write"});
    pv.add(acl::Halt{});
  }

  // w1's block while the first matrix is active: 2n slots.
  Program& p1 = out[player(1)];
  {
    std::size_t emitted = 0;
    if (kind == VariantKind::kNaive) {
      for (int j = 1; j <= n; ++j) {
        p1.add(ApplyGate{GateKind::kSwap, {QubitRef::at(channel(j), 1), QubitRef::pool_qubit(j - 1)},
                         "all", std::nullopt});
      }
      p1.add(ApplyGate{GateKind::kH, {QubitRef::pool_qubit(0)}, "", std::nullopt});
      for (int j = 1; j < n; ++j) {
        p1.add(ApplyGate{GateKind::kCnot, {QubitRef::pool_qubit(j - 1), QubitRef::pool_qubit(j)},
                         "", std::nullopt});
      }
      for (int j = 1; j <= n; ++j) {
        p1.add(ApplyGate{GateKind::kSwap, {QubitRef::at(channel(j), 1), QubitRef::pool_qubit(j - 1)},
                         "all", std::nullopt});
      }
      emitted = static_cast<std::size_t>(2 * n);
    } else if (classical) {
      const int lambda = p1.var("lambda");
      p1.add(acl::SampleBit{lambda, strategy->p_shared});
      for (int j = 1; j <= n; ++j) {
        p1.add(WriteClassical{channel(j), 1, Expr::var(lambda), "write"});
      }
      emitted = static_cast<std::size_t>(n);
    } else {
      // Attempt to re-enable entanglement, then build GHZ across the C_j.
      if (kind == VariantKind::kEnt1) {
        p1.add(SetAttrCell{CellName{"Me", {channel(1)}}, Expr::constant(1), std::nullopt, "write"});
        ++emitted;
      }
      if (kind == VariantKind::kEnt2) {
        p1.add(SetAttrCell{CellName{"Me", {channel(1), channel(2)}}, Expr::constant(1),
                           std::nullopt, "write"});
        ++emitted;
      }
      p1.add(ApplyGate{GateKind::kH, {QubitRef::at(channel(1), 1)}, "all", std::nullopt});
      for (int j = 1; j < n; ++j) {
        p1.add(ApplyGate{GateKind::kCnot, {QubitRef::at(channel(j), 1), QubitRef::at(channel(j + 1), 1)},
                         "all", std::nullopt});
      }
      emitted += static_cast<std::size_t>(n);
    }
    for (; emitted < static_cast<std::size_t>(2 * n); ++emitted) p1.add(acl::Skip{});
  }

  for (int j = 1; j <= n; ++j) {
    Program& pj = out[player(j)];
    if (classical) {
      const int c = pj.var("c");
      const int y = pj.var("y");
      pj.add(ReadClassical{channel(j), std::nullopt, c, "read"});
      pj.add(acl::Assign{y, strategy_expr(*strategy, j, c)});
      pj.add(acl::Skip{});
      pj.add(acl::Skip{});
      pj.add(acl::Skip{});
      pj.add(FlipIf{Expr::var(y), "B", "flip", std::nullopt, "all"});
    } else {
      const int x = pj.var("x");
      const int m = pj.var("m");
      pj.add(ReadClassical{channel(j), 0, x, "read"});
      pj.add(ApplyGate{GateKind::kS, {QubitRef::at(channel(j), 1)}, "all", Expr::var(x)});
      pj.add(ApplyGate{GateKind::kH, {QubitRef::at(channel(j), 1)}, "all", std::nullopt});
      pj.add(MeasureQ{{channel(j)}, m, measure_right});
      pj.add(FlipIf{Expr::bit(Expr::var(m), 1), "B", "flip", channel(j), "all"});
    }
  }
  Program& last = out[player(1)];
  last.add(ReadClassical{"B", std::nullopt, last.var("guess"), "read"});
  last.add(acl::Halt{});
  return out;
}

std::map<std::string, Program> BreachScenario::permitted_probe() const {
  if (!variant_.lifted()) throw ConfigError("probe applies to lifted variants only");
  std::map<std::string, Program> out;
  auto gate = [](GateKind k, std::vector<QubitRef> t) {
    return ApplyGate{k, std::move(t), "all", std::nullopt};
  };
  for (int j = 1; j <= 2; ++j) {
    Program& p = out[player(j)];
    p.add(gate(GateKind::kH, {QubitRef::at(channel(j), 1)}));
    p.add(gate(GateKind::kCnot, {QubitRef::at(channel(j), 1), QubitRef::at(ancilla(j), 0)}));
  }
  Program& helper = out[player(chain_owner(n_))];
  helper.add(gate(GateKind::kH, {QubitRef::at(ancilla(3), 0)}));
  helper.add(gate(GateKind::kCnot, {QubitRef::at(ancilla(3), 0), QubitRef::at(ancilla(4), 0)}));
  helper.add(gate(GateKind::kCnot, {QubitRef::at(ancilla(4), 0), QubitRef::at(ancilla(5), 0)}));
  return out;
}

}  // namespace qacl::scenario
