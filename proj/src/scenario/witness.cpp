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

#include "qacl/scenario/witness.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include <fmt/format.h>

#include "qacl/acl/equivalence.hpp"
#include "qacl/error.hpp"

namespace qacl::scenario {
namespace {

using acl::ApplyGate;
using acl::CellName;
using acl::Execution;
using acl::ExecutionOutcome;
using acl::Expr;
using acl::Grant;
using acl::ObjectKey;
using acl::Program;
using acl::QubitRef;
using acl::ReadAttrCell;
using acl::SetAttrCell;
using acl::SystemConfig;
using policy::ModelKind;
using policy::ModelSpec;
using quantum::GateKind;

std::string reg(int i) { return fmt::format("X{}", i); }

SystemConfig base(ModelSpec model, std::vector<std::string> subjects, int registers,
                  std::vector<std::string> rights) {
  SystemConfig c;
  c.name = "witness";
  c.model = model;
  c.subjects = std::move(subjects);
  for (int i = 1; i <= registers; ++i) c.quantum.push_back({reg(i), 1});
  c.rights = std::move(rights);
  return c;
}

Grant grant(std::string s, std::string o, std::vector<std::string> rights) {
  return Grant{std::move(s), ObjectKey::name(std::move(o)), std::move(rights)};
}

Grant grant_set(std::string s, std::vector<std::string> members, std::vector<std::string> rights) {
  return Grant{std::move(s), ObjectKey::set(std::move(members)), std::move(rights)};
}

Program& gate(Program& p, GateKind kind, std::vector<int> regs, std::string right = "") {
  std::vector<QubitRef> targets;
  for (int r : regs) targets.push_back(QubitRef::at(reg(r)));
  p.add(ApplyGate{kind, std::move(targets), std::move(right), std::nullopt});
  return p;
}

// Reads a cell and then overwrites it.
Program& rewrite(Program& p, CellName cell, Expr value) {
  const int v = p.var("old");
  p.add(ReadAttrCell{cell, v, "read"});
  p.add(SetAttrCell{std::move(cell), std::move(value), std::nullopt, "write"});
  return p;
}

Program& rewrite_rights(Program& p, CellName cell, std::vector<std::string> rights) {
  const int v = p.var("old");
  p.add(ReadAttrCell{cell, v, "read"});
  p.add(SetAttrCell{std::move(cell), Expr::constant(0), std::move(rights), "write"});
  return p;
}

Execution single(std::string label, Program p, std::uint64_t seed) {
  Execution e;
  e.label = std::move(label);
  e.scheduler = acl::SchedulerSpec::round_robin();
  e.programs["u"] = std::move(p);
  e.seed = seed;
  return e;
}

ExecutionOutcome run(const SystemConfig& cfg, const Execution& e) {
  return acl::evaluate(acl::System::compile(cfg), e);
}

class Builder {
 public:
  Builder(std::string pair, std::string claim) {
    report_.pair = std::move(pair);
    report_.claim = std::move(claim);
  }

  void row(const std::string& system, const std::string& execution, const ExecutionOutcome& o,
           bool expected_generable, bool expected_authorized) {
    report_.rows.push_back(WitnessRow{system, execution, o.generable, o.authorized,
                                      expected_generable, expected_authorized});
  }

  void candidate(bool distinguished) {
    ++report_.candidates;
    if (distinguished) ++report_.distinguished;
  }

  WitnessReport finish() {
    report_.matches = report_.candidates > 0 && report_.distinguished == report_.candidates &&
                      std::all_of(report_.rows.begin(), report_.rows.end(),
                                  [](const WitnessRow& r) { return r.ok(); });
    return std::move(report_);
  }

 private:
  WitnessReport report_;
};

// Any difference in (generable, authorized) over the suite.
bool differs(const std::vector<ExecutionOutcome>& a, const std::vector<ExecutionOutcome>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return true;
  }
  return false;
}

std::vector<ExecutionOutcome> run_suite(const SystemConfig& cfg, const std::vector<Execution>& suite) {
  std::vector<ExecutionOutcome> out;
  const auto sys = acl::System::compile(cfg);
  for (const auto& e : suite) out.push_back(acl::evaluate(sys, e));
  return out;
}

// All subsets of {1..n} with size in [1, k], as register lists.
std::vector<std::vector<int>> subsets_up_to(int n, int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) > k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) s.push_back(i + 1);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> names(const std::vector<int>& regs) {
  std::vector<std::string> out;
  for (int r : regs) out.push_back(reg(r));
  return out;
}

// SUBSYS^(k-1) systems embed into SUBSYS^k with identical verdicts.
void embedding_rows(Builder& b, const SystemConfig& low, const SystemConfig& high,
                    const std::vector<Execution>& suite, const std::string& label) {
  const auto result = acl::check_equivalence(acl::System::compile(low), acl::System::compile(high), suite);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    b.row(label + ":low", suite[i].label, result.left[i], result.left[i].generable,
          result.left[i].authorized);
    b.row(label + ":high", suite[i].label, result.right[i], result.left[i].generable,
          result.left[i].authorized);
  }
}

WitnessReport subsys_hierarchy(std::uint64_t seed) {
  constexpr int k = 3;
  Builder b("subsys(k,k-1)",
            "SUBSYS^k authorizes a single k-register QFT request that no SUBSYS^(k-1) system can");
  SystemConfig a = base({ModelKind::kSubsys, k}, {"u"}, k, {"QFT(3)"});
  a.grants.push_back(grant_set("u", names({1, 2, 3}), {"QFT(3)"}));
  Program p;
  gate(p, GateKind::kQft, {1, 2, 3});
  Program p2;  // first request of any decomposition into smaller subsystems
  gate(p2, GateKind::kH, {1});
  const std::vector<Execution> suite = {single("P", p, seed), single("P'", p2, seed)};
  const auto in_a = run_suite(a, suite);
  b.row("A", "P", in_a[0], true, true);
  b.row("A", "P'", in_a[1], false, false);

  const auto subsets = subsets_up_to(k, k - 1);
  for (std::uint64_t pattern = 0; pattern < (1ULL << subsets.size()); ++pattern) {
    SystemConfig c = base({ModelKind::kSubsys, k - 1}, {"u"}, k, {"QFT(3)", "H"});
    c.grants.push_back(grant_set("u", names({1}), {"H"}));
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      if ((pattern >> i) & 1ULL) c.grants.push_back(grant_set("u", names(subsets[i]), {"QFT(3)"}));
    }
    const auto in_c = run_suite(c, suite);
    b.candidate(differs(in_a, in_c));
    if (pattern + 1 == (1ULL << subsets.size())) {
      b.row("B:subsys:k=2", "P", in_c[0], true, false);
      b.row("B:subsys:k=2", "P'", in_c[1], true, true);
    }
  }

  SystemConfig low = base({ModelKind::kSubsys, 2}, {"u"}, 3, {"CNOT", "H"});
  low.grants.push_back(grant_set("u", names({1, 2}), {"CNOT"}));
  low.grants.push_back(grant_set("u", names({2}), {"H"}));
  SystemConfig high = low;
  high.model.k = 3;
  Program e1, e2, e3;
  gate(e1, GateKind::kCnot, {1, 2});
  gate(gate(e2, GateKind::kH, {2}), GateKind::kCnot, {2, 3});
  gate(e3, GateKind::kQft, {1, 2, 3}, "CNOT");
  embedding_rows(b, low, high,
                 {single("E1", e1, seed), single("E2", e2, seed), single("E3", e3, seed)},
                 "embed");
  return b.finish();
}

WitnessReport grp_hierarchy(std::uint64_t seed) {
  constexpr int k = 3;
  constexpr int regs = 2 * k;
  Builder b("grp(k,k-1)",
            "GRP^k separates k pairs that any GRP^(k-1) labelling must merge (pigeonhole)");
  auto make = [&](int labels, const std::vector<int>& g) {
    SystemConfig c = base({ModelKind::kGrp, labels}, {"u"}, regs, {"CNOT"});
    for (int i = 1; i <= regs; ++i) {
      c.grants.push_back(grant("u", reg(i), {"CNOT"}));
      c.groups.push_back({reg(i), g[static_cast<std::size_t>(i - 1)]});
    }
    return c;
  };
  std::vector<int> ga;
  for (int i = 1; i <= regs; ++i) ga.push_back((i + 1) / 2);
  const SystemConfig a = make(k, ga);
  Program p;
  for (int j = 1; j <= k; ++j) gate(p, GateKind::kCnot, {2 * j - 1, 2 * j});
  const Execution ep = single("P", p, seed);
  const auto a_p = run(a, ep);
  b.row("A", "P", a_p, true, true);

  bool representative_done = false;
  for (int code = 0; code < (1 << regs); ++code) {
    std::vector<int> g;
    for (int i = 0; i < regs; ++i) g.push_back(((code >> i) & 1) + 1);
    const SystemConfig c = make(k - 1, g);
    const auto c_p = run(c, ep);
    if (!(c_p == a_p)) {
      b.candidate(true);
      continue;
    }
    // Pigeonhole: two registers from different A-groups share a label.
    int x = -1, y = -1;
    for (int i = 1; i <= regs && x < 0; ++i) {
      for (int j = i + 1; j <= regs; ++j) {
        if (ga[static_cast<std::size_t>(i - 1)] != ga[static_cast<std::size_t>(j - 1)] &&
            g[static_cast<std::size_t>(i - 1)] == g[static_cast<std::size_t>(j - 1)]) {
          x = i;
          y = j;
          break;
        }
      }
    }
    if (x < 0) {
      b.candidate(false);
      continue;
    }
    Program p2;
    gate(p2, GateKind::kCnot, {x, y});
    const Execution e2 = single("P'", p2, seed);
    const auto a_p2 = run(a, e2);
    const auto c_p2 = run(c, e2);
    b.candidate(!(a_p2 == c_p2));
    if (!representative_done) {
      representative_done = true;
      b.row("B:grp:k=2", "P", c_p, true, true);
      b.row("A", fmt::format("P'=CNOT(X{},X{})", x, y), a_p2, true, false);
      b.row("B:grp:k=2", fmt::format("P'=CNOT(X{},X{})", x, y), c_p2, true, true);
    }
  }
  return b.finish();
}

WitnessReport ent_hierarchy(std::uint64_t seed) {
  Builder b("ent(1,2)",
            "ENT^2 allows X1-X2 and X3-X4 but not X1-X3; no ENT^1 flag assignment does");
  constexpr int regs = 4;
  SystemConfig a = base({ModelKind::kEnt2, 2}, {"u"}, regs, {"CNOT", "measure"});
  for (int i = 1; i <= regs; ++i) a.grants.push_back(grant("u", reg(i), {"CNOT", "measure"}));
  a.entangle_allow.push_back({ObjectKey::set({"X1", "X2"}), true});
  a.entangle_allow.push_back({ObjectKey::set({"X3", "X4"}), true});
  Program p, p2;
  gate(gate(p, GateKind::kCnot, {1, 2}), GateKind::kCnot, {3, 4});
  gate(p2, GateKind::kCnot, {1, 3});
  const std::vector<Execution> suite = {single("P", p, seed), single("P'", p2, seed)};
  const auto in_a = run_suite(a, suite);
  b.row("A", "P", in_a[0], true, true);
  b.row("A", "P'", in_a[1], true, false);
  for (int code = 0; code < (1 << regs); ++code) {
    SystemConfig c = base({ModelKind::kEnt1, 1}, {"u"}, regs, {"CNOT", "measure"});
    for (int i = 1; i <= regs; ++i) {
      c.grants.push_back(grant("u", reg(i), {"CNOT", "measure"}));
      c.entangle_allow.push_back({ObjectKey::name(reg(i)), ((code >> (i - 1)) & 1) != 0});
    }
    const auto in_c = run_suite(c, suite);
    b.candidate(differs(in_a, in_c));
    if (code == (1 << regs) - 1) {
      b.row("B:ent1", "P", in_c[0], true, true);
      b.row("B:ent1", "P'", in_c[1], true, true);
    }
  }

  // ENT^1 embeds into ENT^2 with Me'[X,Y] = Me[X] and Me[Y].
  SystemConfig low = base({ModelKind::kEnt1, 1}, {"u"}, 3, {"CNOT", "measure"});
  SystemConfig high = base({ModelKind::kEnt2, 2}, {"u"}, 3, {"CNOT", "measure"});
  const bool me[3] = {true, true, false};
  for (int i = 1; i <= 3; ++i) {
    low.grants.push_back(grant("u", reg(i), {"CNOT", "measure"}));
    high.grants.push_back(grant("u", reg(i), {"CNOT", "measure"}));
    low.entangle_allow.push_back({ObjectKey::name(reg(i)), me[i - 1]});
    for (int j = i + 1; j <= 3; ++j) {
      high.entangle_allow.push_back({ObjectKey::set({reg(i), reg(j)}), me[i - 1] && me[j - 1]});
    }
  }
  Program e1, e2, e3;
  gate(e1, GateKind::kCnot, {1, 2});
  gate(e2, GateKind::kCnot, {2, 3});
  e3.add(acl::MeasureQ{{"X1", "X2"}, e3.var("m"), "measure"});
  gate(e3, GateKind::kCnot, {1, 2});
  embedding_rows(b, low, high,
                 {single("E1", e1, seed), single("E2", e2, seed), single("E3", e3, seed)},
                 "embed");
  return b.finish();
}

WitnessReport subsys_vs_grp(std::uint64_t seed) {
  Builder b("subsys-vs-grp",
            "SUBSYS grants {X1,X2} and {X2,X3} without {X1,X3}; GRP labels are transitive");
  SystemConfig a = base({ModelKind::kSubsys, 2}, {"u"}, 3, {"CNOT"});
  a.grants.push_back(grant_set("u", {"X1", "X2"}, {"CNOT"}));
  a.grants.push_back(grant_set("u", {"X2", "X3"}, {"CNOT"}));
  Program p, p2;
  gate(gate(p, GateKind::kCnot, {1, 2}), GateKind::kCnot, {2, 3});
  gate(p2, GateKind::kCnot, {1, 3});
  const std::vector<Execution> suite = {single("P", p, seed), single("P'", p2, seed)};
  const auto in_a = run_suite(a, suite);
  b.row("A", "P", in_a[0], true, true);
  b.row("A", "P'", in_a[1], true, false);
  for (int labels = 0; labels < 27; ++labels) {
    for (int rights = 0; rights < 8; ++rights) {
      SystemConfig c = base({ModelKind::kGrp, 3}, {"u"}, 3, {"CNOT"});
      int code = labels;
      for (int i = 1; i <= 3; ++i) {
        c.groups.push_back({reg(i), code % 3 + 1});
        code /= 3;
        if ((rights >> (i - 1)) & 1) c.grants.push_back(grant("u", reg(i), {"CNOT"}));
      }
      const auto in_c = run_suite(c, suite);
      b.candidate(differs(in_a, in_c));
      if (labels == 0 && rights == 7) {
        b.row("B:grp:k=3", "P", in_c[0], true, true);
        b.row("B:grp:k=3", "P'", in_c[1], true, true);
      }
    }
  }

  // GRP embeds into SUBSYS^N: Mq'[s,o] is the intersection over o when the
  // labels agree.
  SystemConfig low = base({ModelKind::kGrp, 2}, {"u"}, 3, {"CNOT", "H"});
  low.groups = {{"X1", 1}, {"X2", 1}, {"X3", 2}};
  low.grants = {grant("u", "X1", {"CNOT", "H"}), grant("u", "X2", {"CNOT"}),
                grant("u", "X3", {"CNOT", "H"})};
  SystemConfig high = base({ModelKind::kSubsys, 3}, {"u"}, 3, {"CNOT", "H"});
  high.grants = {grant_set("u", {"X1"}, {"CNOT", "H"}), grant_set("u", {"X2"}, {"CNOT"}),
                 grant_set("u", {"X3"}, {"CNOT", "H"}), grant_set("u", {"X1", "X2"}, {"CNOT"})};
  Program e1, e2, e3;
  gate(gate(e1, GateKind::kH, {1}), GateKind::kCnot, {1, 2});
  gate(e2, GateKind::kCnot, {2, 3});
  gate(e3, GateKind::kH, {2});
  embedding_rows(b, low, high,
                 {single("E1", e1, seed), single("E2", e2, seed), single("E3", e3, seed)},
                 "embed");
  return b.finish();
}

WitnessReport ent_vs_subsys(std::uint64_t seed) {
  Builder b("ent-vs-subsys",
            "ENT^1 refuses to mark an entangled register disentangled; history-free models cannot");
  const std::vector<std::string> rights = {"read", "write", "H", "CNOT", "measure"};
  SystemConfig a = base({ModelKind::kEnt1, 1}, {"u"}, 2, rights);
  a.guards = {"Me"};
  a.grants.push_back(grant("u", "Me", {"read", "write"}));
  for (int i = 1; i <= 2; ++i) {
    a.grants.push_back(grant("u", reg(i), {"H", "CNOT", "measure"}));
    a.entangle_allow.push_back({ObjectKey::name(reg(i)), true});
  }
  // disent(X1) for ENT^1: read then clear Me[X1].
  auto ent_programs = [] {
    Program p, p2, p3;
    rewrite(p, CellName{"Me", {"X1"}}, Expr::constant(0));
    gate(gate(p2, GateKind::kH, {1}), GateKind::kCnot, {1, 2});
    rewrite(p2, CellName{"Me", {"X1"}}, Expr::constant(0));
    gate(gate(p3, GateKind::kH, {1}), GateKind::kCnot, {1, 2});
    return std::vector<Program>{p, p2, p3};
  };
  auto suite_of = [&](const std::vector<Program>& ps) {
    return std::vector<Execution>{single("P", ps[0], seed), single("P'", ps[1], seed),
                                  single("P''", ps[2], seed)};
  };
  const auto in_a = run_suite(a, suite_of(ent_programs()));
  b.row("A", "P", in_a[0], true, true);
  b.row("A", "P'", in_a[1], true, false);
  b.row("A", "P''", in_a[2], true, true);

  // SUBSYS^2 candidates: disent(X1) forbids the pair {X1,X2}.
  for (int code = 0; code < 16; ++code) {
    SystemConfig c = base({ModelKind::kSubsys, 2}, {"u"}, 2, rights);
    c.guards = {"Mq"};
    std::vector<std::string> guard_rights;
    if (code & 1) guard_rights.push_back("read");
    if (code & 2) guard_rights.push_back("write");
    if (!guard_rights.empty()) c.grants.push_back(grant("u", "Mq", guard_rights));
    c.grants.push_back(grant_set("u", {"X1"}, (code & 4) ? std::vector<std::string>{"H", "measure"}
                                                         : std::vector<std::string>{"measure"}));
    c.grants.push_back(grant_set("u", {"X2"}, {"H", "measure"}));
    if (code & 8) c.grants.push_back(grant_set("u", {"X1", "X2"}, {"CNOT"}));
    Program p, p2, p3;
    rewrite_rights(p, CellName{"Mq", {"u", "X1", "X2"}}, {});
    gate(gate(p2, GateKind::kH, {1}), GateKind::kCnot, {1, 2});
    rewrite_rights(p2, CellName{"Mq", {"u", "X1", "X2"}}, {});
    gate(gate(p3, GateKind::kH, {1}), GateKind::kCnot, {1, 2});
    const auto in_c = run_suite(c, suite_of({p, p2, p3}));
    b.candidate(differs(in_a, in_c));
    if (code == 15) {
      b.row("B:subsys:k=2", "P", in_c[0], true, true);
      b.row("B:subsys:k=2", "P'", in_c[1], true, true);
      b.row("B:subsys:k=2", "P''", in_c[2], true, true);
    }
  }

  // GRP^2 candidates: disent(X1) moves X1 into its own group.
  for (int code = 0; code < 16; ++code) {
    SystemConfig c = base({ModelKind::kGrp, 2}, {"u"}, 2, rights);
    c.guards = {"G"};
    std::vector<std::string> guard_rights;
    if (code & 1) guard_rights.push_back("read");
    if (code & 2) guard_rights.push_back("write");
    if (!guard_rights.empty()) c.grants.push_back(grant("u", "G", guard_rights));
    std::vector<std::string> x1 = {"measure"};
    if (code & 4) x1.push_back("H");
    if (code & 8) x1.push_back("CNOT");
    c.grants.push_back(grant("u", "X1", x1));
    c.grants.push_back(grant("u", "X2", {"H", "CNOT", "measure"}));
    Program p, p2, p3;
    rewrite(p, CellName{"G", {"X1"}}, Expr::constant(2));
    gate(gate(p2, GateKind::kH, {1}), GateKind::kCnot, {1, 2});
    rewrite(p2, CellName{"G", {"X1"}}, Expr::constant(2));
    gate(gate(p3, GateKind::kH, {1}), GateKind::kCnot, {1, 2});
    const auto in_c = run_suite(c, suite_of({p, p2, p3}));
    b.candidate(differs(in_a, in_c));
    if (code == 15) {
      b.row("B:grp:k=2", "P", in_c[0], true, true);
      b.row("B:grp:k=2", "P'", in_c[1], true, true);
    }
  }
  return b.finish();
}

WitnessReport grp_vs_subsys_lt_n(std::uint64_t seed) {
  constexpr int n = 3;
  Builder b("grp-vs-subsysLtN",
            "a single group of N registers admits an N-register request no SUBSYS^k, k<N, admits");
  SystemConfig a = base({ModelKind::kGrp, 1}, {"u"}, n, {"QFT(3)"});
  for (int i = 1; i <= n; ++i) a.grants.push_back(grant("u", reg(i), {"QFT(3)"}));
  Program p;
  gate(p, GateKind::kQft, {1, 2, 3});
  const std::vector<Execution> suite = {single("P", p, seed)};
  const auto in_a = run_suite(a, suite);
  b.row("A", "P", in_a[0], true, true);
  for (int k = 1; k < n; ++k) {
    const auto subsets = subsets_up_to(n, k);
    for (std::uint64_t pattern = 0; pattern < (1ULL << subsets.size()); ++pattern) {
      SystemConfig c = base({ModelKind::kSubsys, k}, {"u"}, n, {"QFT(3)"});
      for (std::size_t i = 0; i < subsets.size(); ++i) {
        if ((pattern >> i) & 1ULL) c.grants.push_back(grant_set("u", names(subsets[i]), {"QFT(3)"}));
      }
      const auto in_c = run_suite(c, suite);
      b.candidate(differs(in_a, in_c));
      if (pattern + 1 == (1ULL << subsets.size())) {
        b.row(fmt::format("B:subsys:k={}", k), "P", in_c[0], true, false);
      }
    }
  }
  return b.finish();
}

WitnessReport grp_vs_ent(std::uint64_t seed) {
  Builder b("grp-vs-ent",
            "GRP can regroup entangled registers; ENT^2 cannot express the regrouping");
  const std::vector<std::string> rights = {"read", "write", "H", "CNOT"};
  SystemConfig a = base({ModelKind::kGrp, 3}, {"u", "v"}, 4, rights);
  a.guards = {"G"};
  a.grants.push_back(grant("u", "G", {"read", "write"}));
  for (const std::string s : {"u", "v"}) {
    for (int i = 1; i <= 4; ++i) a.grants.push_back(grant(s, reg(i), {"H", "CNOT"}));
  }
  a.groups = {{"X1", 1}, {"X2", 1}, {"X3", 1}, {"X4", 2}};

  auto execution = [&](const std::string& label, Program pu, bool with_v) {
    Execution e;
    e.label = label;
    std::vector<std::string> script(pu.code.size(), "u");
    script.insert(script.end(), 2, "v");
    e.scheduler = acl::SchedulerSpec::scripted(script);
    e.programs["u"] = std::move(pu);
    if (with_v) {
      Program pv;
      gate(gate(pv, GateKind::kCnot, {1, 4}), GateKind::kCnot, {2, 3});
      e.programs["v"] = std::move(pv);
    }
    e.seed = seed;
    return e;
  };
  auto prefix = [] {
    Program p;
    gate(gate(p, GateKind::kH, {1}), GateKind::kCnot, {1, 2});
    return p;
  };

  // newgrp(X1,X4) in GRP: both registers get the fresh label 3.
  Program pu = prefix();
  rewrite(pu, CellName{"G", {"X1"}}, Expr::constant(3));
  rewrite(pu, CellName{"G", {"X4"}}, Expr::constant(3));
  const auto a_p = run(a, execution("P", pu, false));
  const auto a_p2 = run(a, execution("P'", pu, true));
  b.row("A", "P", a_p, true, true);
  b.row("A", "P'", a_p2, true, true);

  SystemConfig c = base({ModelKind::kEnt2, 2}, {"u", "v"}, 4, rights);
  c.guards = {"Me", "Mq"};
  c.grants.push_back(grant("u", "Me", {"read", "write"}));
  c.grants.push_back(grant("u", "Mq", {"read", "write"}));
  for (const std::string s : {"u", "v"}) {
    for (int i = 1; i <= 4; ++i) c.grants.push_back(grant(s, reg(i), {"H", "CNOT"}));
  }
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      c.entangle_allow.push_back({ObjectKey::set({reg(i), reg(j)}), true});
    }
  }

  // Encoding 1: newgrp isolates X1 and X4 from the rest through Me pairs.
  {
    Program q = prefix();
    for (auto [x, y] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 4}, std::pair{3, 4}}) {
      rewrite(q, CellName{"Me", {reg(x), reg(y)}}, Expr::constant(0));
    }
    const auto c_p = run(c, execution("P", q, false));
    const auto c_p2 = run(c, execution("P'", q, true));
    b.candidate(!(c_p == a_p) || !(c_p2 == a_p2));
    b.row("B:ent2:flags", "P", c_p, true, false);
  }
  // Encoding 2: newgrp withdraws v's CNOT right on the regrouped registers.
  {
    Program q = prefix();
    rewrite_rights(q, CellName{"Mq", {"v", "X1"}}, {"H"});
    rewrite_rights(q, CellName{"Mq", {"v", "X2"}}, {"H"});
    const auto c_p = run(c, execution("P", q, false));
    const auto c_p2 = run(c, execution("P'", q, true));
    b.candidate(!(c_p == a_p) || !(c_p2 == a_p2));
    b.row("B:ent2:rights", "P", c_p, true, true);
    b.row("B:ent2:rights", "P'", c_p2, true, false);
  }
  return b.finish();
}

std::string canonical(std::string_view pair) {
  std::string s(pair);
  // Accept a Unicode minus sign.
  for (std::size_t pos; (pos = s.find("\xe2\x88\x92")) != std::string::npos;) s.replace(pos, 3, "-");
  static const std::map<std::string, std::string> aliases = {
      {"subsys-k", "subsys(k,k-1)"}, {"grp-k", "grp(k,k-1)"}, {"ent-1-2", "ent(1,2)"},
      {"grp-vs-subsys-ltn", "grp-vs-subsysLtN"}};
  auto it = aliases.find(s);
  return it == aliases.end() ? s : it->second;
}

}  // namespace

const std::vector<std::string>& witness_pairs() {
  static const std::vector<std::string> pairs = {
      "subsys(k,k-1)", "grp(k,k-1)", "ent(1,2)", "subsys-vs-grp",
      "ent-vs-subsys", "grp-vs-subsysLtN", "grp-vs-ent"};
  return pairs;
}

WitnessReport flexibility_witness(std::string_view pair, std::uint64_t seed) {
  const std::string id = canonical(pair);
  static const std::map<std::string, std::function<WitnessReport(std::uint64_t)>> table = {
      {"subsys(k,k-1)", subsys_hierarchy}, {"grp(k,k-1)", grp_hierarchy},
      {"ent(1,2)", ent_hierarchy},         {"subsys-vs-grp", subsys_vs_grp},
      {"ent-vs-subsys", ent_vs_subsys},    {"grp-vs-subsysLtN", grp_vs_subsys_lt_n},
      {"grp-vs-ent", grp_vs_ent}};
  auto it = table.find(id);
  if (it == table.end()) throw ConfigError(fmt::format("unknown witness pair '{}'", pair));
  return it->second(seed);
}

std::string WitnessReport::text() const {
  std::string out = fmt::format("pair={} match={} candidates={} distinguished={}\n", pair,
                                matches ? "true" : "false", candidates, distinguished);
  out += fmt::format("claim {}\n", claim);
  for (const auto& r : rows) {
    out += fmt::format(
        "row system={} execution={} generable={} authorized={} expected_generable={} "
        "expected_authorized={} ok={}\n",
        r.system, r.execution, r.generable, r.authorized, r.expected_generable,
        r.expected_authorized, r.ok());
  }
  return out;
}

}  // namespace qacl::scenario
