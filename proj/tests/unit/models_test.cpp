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

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "qacl/acl/engine.hpp"
#include "qacl/error.hpp"
#include "qacl/rng.hpp"

namespace qacl::policy {
namespace {

using acl::ObjectKey;
using acl::SystemConfig;

TEST(ModelSpec, ParseAndRender) {
  for (const char* id : {"classical", "naive", "subsys:k=2", "grp:k=5", "ent1", "ent2"}) {
    EXPECT_EQ(ModelSpec::parse(id).id(), id);
  }
  EXPECT_EQ(ModelSpec::parse("subsys:k=3").k, 3);
  EXPECT_THROW(ModelSpec::parse("subsys"), ConfigError);
  EXPECT_THROW(ModelSpec::parse("subsys:k=x"), ConfigError);
  EXPECT_THROW(ModelSpec::parse("bogus"), ConfigError);
}

// ---- reference monitor written from the model definitions ----

struct Oracle {
  const SystemConfig& c;
  std::map<std::pair<std::string, std::set<std::string>>, std::set<std::string>> rights;
  std::map<std::string, int> label;
  std::map<std::set<std::string>, bool> me;

  explicit Oracle(const SystemConfig& config) : c(config) {
    for (const auto& g : c.grants) {
      std::set<std::string> key(g.object.names.begin(), g.object.names.end());
      rights[{g.subject, key}].insert(g.rights.begin(), g.rights.end());
    }
    for (const auto& [reg, l] : c.groups) label[reg] = l;
    for (const auto& f : c.entangle_allow) {
      me[std::set<std::string>(f.object.names.begin(), f.object.names.end())] = f.value;
    }
  }

  bool has(const std::string& s, const std::set<std::string>& key, const std::string& r) const {
    auto it = rights.find({s, key});
    if (it == rights.end()) return false;
    return it->second.count(r) || it->second.count("all");
  }

  bool each(const std::string& s, const std::vector<std::string>& o, const std::string& r) const {
    return std::all_of(o.begin(), o.end(), [&](const std::string& x) { return has(s, {x}, r); });
  }

  bool flag(const std::set<std::string>& key) const {
    auto it = me.find(key);
    return it != me.end() && it->second;
  }

  bool quantum(const std::string& s, const std::vector<std::string>& o, const std::string& r) const {
    switch (c.model.kind) {
      case ModelKind::kClassical:
        return o.size() == 1 && has(s, {o[0]}, r);
      case ModelKind::kNaive:
        return each(s, o, r);
      case ModelKind::kSubsys:
        return static_cast<int>(o.size()) <= c.model.k &&
               has(s, std::set<std::string>(o.begin(), o.end()), r);
      case ModelKind::kGrp: {
        for (const auto& x : o) {
          if (label.at(x) != label.at(o[0])) return false;
        }
        return each(s, o, r);
      }
      case ModelKind::kEnt1:
        if (!each(s, o, r)) return false;
        if (o.size() > 1) {
          for (const auto& x : o) {
            if (!flag({x})) return false;
          }
        }
        return true;
      case ModelKind::kEnt2:
        if (!each(s, o, r)) return false;
        for (std::size_t i = 0; i < o.size(); ++i) {
          for (std::size_t j = i + 1; j < o.size(); ++j) {
            if (!flag({o[i], o[j]})) return false;
          }
        }
        return true;
    }
    return false;
  }
};

SystemConfig random_config(Rng& r, ModelSpec model) {
  SystemConfig c;
  c.model = model;
  c.subjects = {"u", "v", "w"};
  c.classical = {{"A", 1}, {"B", 3}};
  const int nq = 4;
  for (int i = 1; i <= nq; ++i) c.quantum.push_back({fmt::format("X{}", i), 1});
  c.rights = {"read", "write", "H", "CNOT", "all"};
  const std::vector<std::string> pool = {"read", "write", "H", "CNOT"};
  auto some = [&] {
    std::vector<std::string> out;
    for (const auto& p : pool) {
      if (r.bernoulli(0.5)) out.push_back(p);
    }
    if (r.bernoulli(0.1)) out.push_back("all");
    return out;
  };
  for (const auto& s : c.subjects) {
    for (const auto& a : c.classical) {
      if (auto g = some(); !g.empty()) c.grants.push_back({s, ObjectKey::name(a.name), g});
    }
    if (model.kind == ModelKind::kSubsys) {
      for (unsigned mask = 1; mask < (1u << nq); ++mask) {
        if (static_cast<int>(std::popcount(mask)) > model.k || !r.bernoulli(0.6)) continue;
        std::vector<std::string> members;
        for (int i = 0; i < nq; ++i) {
          if (mask & (1u << i)) members.push_back(fmt::format("X{}", i + 1));
        }
        if (auto g = some(); !g.empty()) c.grants.push_back({s, ObjectKey::set(members), g});
      }
    } else {
      for (const auto& q : c.quantum) {
        if (auto g = some(); !g.empty()) c.grants.push_back({s, ObjectKey::name(q.name), g});
      }
    }
  }
  if (model.kind == ModelKind::kGrp) {
    for (const auto& q : c.quantum) {
      c.groups.push_back({q.name, 1 + static_cast<int>(r.below(static_cast<std::uint64_t>(model.k)))});
    }
  }
  if (model.kind == ModelKind::kEnt1) {
    for (const auto& q : c.quantum) c.entangle_allow.push_back({ObjectKey::name(q.name), r.bit()});
  }
  if (model.kind == ModelKind::kEnt2) {
    for (int i = 1; i <= nq; ++i) {
      for (int j = i + 1; j <= nq; ++j) {
        c.entangle_allow.push_back(
            {ObjectKey::set({fmt::format("X{}", i), fmt::format("X{}", j)}), r.bit()});
      }
    }
  }
  return c;
}

class ModelOracleTest : public ::testing::TestWithParam<std::string> {};

// Property: the monitor agrees with the reference on random systems and
// random requests, before any post-update has run.
TEST_P(ModelOracleTest, AuthorizeMatchesReference) {
  const ModelSpec model = ModelSpec::parse(GetParam());
  Rng r(0xAC1ULL + static_cast<std::uint64_t>(model.kind) * 31 + static_cast<std::uint64_t>(model.k));
  int granted = 0, denied = 0;
  for (int sys = 0; sys < 40; ++sys) {
    const SystemConfig c = random_config(r, model);
    const Oracle oracle(c);
    const auto system = acl::System::compile(c);
    const acl::Engine engine(system, {}, acl::SchedulerSpec::round_robin());
    for (int i = 0; i < 200; ++i) {
      acl::Request req;
      req.subject = static_cast<int>(r.below(3));
      const std::string& s = c.subjects[static_cast<std::size_t>(req.subject)];
      const std::string& right = c.rights[r.below(c.rights.size())];
      req.right = system->find_right(right);
      bool want = false;
      if (r.bernoulli(0.3)) {
        const int a = static_cast<int>(r.below(2));
        req.object = acl::ObjectRef::classical(system->find_classical(c.classical[static_cast<std::size_t>(a)].name));
        want = oracle.has(s, {c.classical[static_cast<std::size_t>(a)].name}, right);
      } else {
        const auto mask = 1 + r.below(15);
        std::vector<int> regs;
        std::vector<std::string> names;
        for (int q = 0; q < 4; ++q) {
          if (mask & (1u << q)) {
            regs.push_back(q);
            names.push_back(c.quantum[static_cast<std::size_t>(q)].name);
          }
        }
        req.object = system->quantum_object(regs);
        want = oracle.quantum(s, names, right);
      }
      ASSERT_EQ(engine.check(req), want) << system->render(req);
      (want ? granted : denied)++;
    }
  }
  // The sample exercises both verdicts.
  EXPECT_GT(granted, 50);
  EXPECT_GT(denied, 50);
}

INSTANTIATE_TEST_SUITE_P(AllModels, ModelOracleTest,
                         ::testing::Values("classical", "naive", "subsys:k=1", "subsys:k=2",
                                           "subsys:k=3", "grp:k=1", "grp:k=3", "ent1", "ent2"),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), ':', '_');
                           std::replace(n.begin(), n.end(), '=', '_');
                           return n;
                         });

// ---- entanglement bookkeeping ----

SystemConfig ent_system(ModelKind kind) {
  SystemConfig c;
  c.model = {kind, kind == ModelKind::kEnt1 ? 1 : 2};
  c.subjects = {"u"};
  for (int i = 1; i <= 3; ++i) c.quantum.push_back({fmt::format("X{}", i), 1});
  c.guards = {"Me"};
  c.rights = {"read", "write", "CNOT", "measure"};
  c.grants.push_back({"u", ObjectKey::name("Me"), {"read", "write"}});
  for (const auto& q : c.quantum) c.grants.push_back({"u", ObjectKey::name(q.name), {"CNOT", "measure"}});
  if (kind == ModelKind::kEnt1) {
    for (const auto& q : c.quantum) c.entangle_allow.push_back({ObjectKey::name(q.name), true});
  } else {
    c.entangle_allow = {{ObjectKey::set({"X1", "X2"}), true},
                        {ObjectKey::set({"X1", "X3"}), true},
                        {ObjectKey::set({"X2", "X3"}), true}};
  }
  return c;
}

acl::Program gates(std::initializer_list<std::pair<std::string, std::string>> cnots) {
  acl::Program p;
  for (const auto& [a, b] : cnots) {
    p.add(acl::ApplyGate{quantum::GateKind::kCnot, {acl::QubitRef::at(a), acl::QubitRef::at(b)}, "",
                         std::nullopt});
  }
  return p;
}

std::uint64_t cell(const acl::Engine& e, const std::string& attr, std::vector<std::string> key) {
  const int id = e.attributes().find_cell(attr, key);
  EXPECT_GE(id, 0) << attr;
  return e.attributes().get(id);
}

TEST(Ent1, GateClearsAndMeasureSetsDisentangled) {
  const auto system = acl::System::compile(ent_system(ModelKind::kEnt1));
  acl::Program p = gates({{"X1", "X2"}});
  p.add(acl::MeasureQ{{"X1"}, p.var("m"), "measure"});
  acl::Engine e(system, {{"u", p}}, acl::SchedulerSpec::round_robin());
  ASSERT_EQ(e.step().kind, acl::StepResult::Kind::kRequest);
  EXPECT_EQ(cell(e, "D", {"X1"}), 0u);
  EXPECT_EQ(cell(e, "D", {"X2"}), 0u);
  EXPECT_EQ(cell(e, "D", {"X3"}), 1u);
  e.step();
  EXPECT_EQ(cell(e, "D", {"X1"}), 1u);
  EXPECT_EQ(cell(e, "D", {"X2"}), 0u);
}

TEST(Ent1, FlagOfEntangledRegisterIsReadOnly) {
  const auto system = acl::System::compile(ent_system(ModelKind::kEnt1));
  acl::Program p = gates({{"X1", "X2"}});
  p.add(acl::SetAttrCell{{"Me", {"X1"}}, acl::Expr::constant(0), std::nullopt, "write"});
  p.add(acl::SetAttrCell{{"Me", {"X3"}}, acl::Expr::constant(0), std::nullopt, "write"});
  acl::Engine e(system, {{"u", p}}, acl::SchedulerSpec::round_robin());
  e.run();
  ASSERT_EQ(e.history().size(), 3u);
  EXPECT_TRUE(e.history()[0].authorized);
  EXPECT_FALSE(e.history()[1].authorized);
  EXPECT_TRUE(e.history()[2].authorized);
  EXPECT_EQ(cell(e, "Me", {"X1"}), 1u);
  EXPECT_EQ(cell(e, "Me", {"X3"}), 0u);
}

TEST(Ent1, ClearedFlagBlocksEntanglingGates) {
  auto c = ent_system(ModelKind::kEnt1);
  c.entangle_allow[2].value = false;
  const auto system = acl::System::compile(c);
  acl::Engine e(system, {{"u", gates({{"X1", "X3"}, {"X1", "X2"}})}}, acl::SchedulerSpec::round_robin());
  e.run();
  EXPECT_FALSE(e.history()[0].authorized);
  EXPECT_TRUE(e.history()[1].authorized);
}

TEST(Ent2, PairBookkeeping) {
  const auto system = acl::System::compile(ent_system(ModelKind::kEnt2));
  acl::Program p = gates({{"X1", "X2"}, {"X2", "X3"}});
  p.add(acl::MeasureQ{{"X2"}, p.var("m"), "measure"});
  acl::Engine e(system, {{"u", p}}, acl::SchedulerSpec::round_robin());
  e.step();
  EXPECT_EQ(cell(e, "D", {"X1", "X2"}), 0u);
  EXPECT_EQ(cell(e, "D", {"X1", "X3"}), 1u);
  e.step();
  EXPECT_EQ(cell(e, "D", {"X2", "X3"}), 0u);
  e.step();
  EXPECT_EQ(cell(e, "D", {"X1", "X2"}), 1u);
  EXPECT_EQ(cell(e, "D", {"X2", "X3"}), 1u);
}

TEST(Ent2, PairFlagGuard) {
  const auto system = acl::System::compile(ent_system(ModelKind::kEnt2));
  acl::Program p = gates({{"X1", "X2"}});
  p.add(acl::SetAttrCell{{"Me", {"X1", "X2"}}, acl::Expr::constant(0), std::nullopt, "write"});
  p.add(acl::SetAttrCell{{"Me", {"X2", "X3"}}, acl::Expr::constant(0), std::nullopt, "write"});
  p.add(acl::ApplyGate{quantum::GateKind::kCnot, {acl::QubitRef::at("X3"), acl::QubitRef::at("X2")}, "",
                       std::nullopt});
  acl::Engine e(system, {{"u", p}}, acl::SchedulerSpec::round_robin());
  e.run();
  ASSERT_EQ(e.history().size(), 4u);
  EXPECT_FALSE(e.history()[1].authorized);
  EXPECT_TRUE(e.history()[2].authorized);
  EXPECT_FALSE(e.history()[3].authorized);
}

// ---- compile-time validation ----

TEST(Compile, SubsysBoundOnK) {
  SystemConfig c;
  c.model = {ModelKind::kSubsys, 0};
  c.subjects = {"u"};
  c.quantum = {{"X1", 1}, {"X2", 1}};
  try {
    acl::System::compile(c);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("k out of range [1, N_q]"), std::string::npos);
  }
  c.model.k = 3;
  EXPECT_THROW(acl::System::compile(c), ConfigError);
  c.model.k = 2;
  EXPECT_NO_THROW(acl::System::compile(c));
}

TEST(Compile, RejectsBadDeclarations) {
  SystemConfig c;
  c.model = {ModelKind::kClassical, 0};
  c.subjects = {"u", "u"};
  EXPECT_THROW(acl::System::compile(c), ConfigError);
  c.subjects = {"u"};
  c.classical = {{"A", 64}};
  EXPECT_THROW(acl::System::compile(c), ConfigError);
  c.classical = {{"A", 1}};
  c.grants = {{"u", ObjectKey::name("Z"), {"read"}}};
  EXPECT_THROW(acl::System::compile(c), ConfigError);
  c.grants = {{"nobody", ObjectKey::name("A"), {"read"}}};
  EXPECT_THROW(acl::System::compile(c), ConfigError);
}

TEST(Compile, GroupLabelsWithinK) {
  SystemConfig c;
  c.model = {ModelKind::kGrp, 2};
  c.subjects = {"u"};
  c.quantum = {{"X1", 1}};
  c.groups = {{"X1", 3}};
  EXPECT_THROW(acl::System::compile(c), ConfigError);
  c.groups = {{"X1", 2}};
  EXPECT_NO_THROW(acl::System::compile(c));
}

TEST(Compile, CapacityLimit) {
  SystemConfig c;
  c.model = {ModelKind::kSubsys, 12};
  for (int i = 0; i < 1100; ++i) c.subjects.push_back(fmt::format("s{}", i));
  for (int i = 1; i <= 12; ++i) c.quantum.push_back({fmt::format("X{}", i), 1});
  EXPECT_THROW(acl::System::compile(c), CapacityError);
}

}  // namespace
}  // namespace qacl::policy
