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

#include "qacl/scenario/efficiency.hpp"

#include <algorithm>
#include <bit>

#include <fmt/format.h>

#include "qacl/acl/system.hpp"
#include "qacl/error.hpp"

namespace qacl::scenario {
namespace {

using policy::ModelKind;

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

acl::SystemConfig sweep_config(const policy::ModelSpec& model, int M, int Nc, int Nq) {
  acl::SystemConfig c;
  c.name = "eff";
  c.model = model;
  for (int s = 1; s <= M; ++s) c.subjects.push_back(fmt::format("s{}", s));
  for (int i = 1; i <= Nc; ++i) c.classical.push_back({fmt::format("c{}", i), 1});
  for (int i = 1; i <= Nq; ++i) c.quantum.push_back({fmt::format("q{}", i), 1});
  c.rights = {"op", "measure"};
  const std::vector<std::string> both = {"op", "measure"};
  const std::string& s = c.subjects.front();
  for (int i = 1; i <= Nc; ++i) c.grants.push_back({s, acl::ObjectKey::name(fmt::format("c{}", i)), both});
  if (model.kind == ModelKind::kSubsys) {
    for (unsigned mask = 1; mask < (1u << Nq); ++mask) {
      if (std::popcount(mask) > model.k) continue;
      std::vector<std::string> members;
      for (int i = 0; i < Nq; ++i) {
        if (mask & (1u << i)) members.push_back(fmt::format("q{}", i + 1));
      }
      c.grants.push_back({s, acl::ObjectKey::set(std::move(members)), both});
    }
  } else {
    for (int i = 1; i <= Nq; ++i) c.grants.push_back({s, acl::ObjectKey::name(fmt::format("q{}", i)), both});
  }
  if (model.kind == ModelKind::kEnt1) {
    for (int i = 1; i <= Nq; ++i) {
      c.entangle_allow.push_back({acl::ObjectKey::name(fmt::format("q{}", i)), true});
    }
  } else if (model.kind == ModelKind::kEnt2) {
    for (int i = 1; i <= Nq; ++i) {
      for (int j = i + 1; j <= Nq; ++j) {
        c.entangle_allow.push_back(
            {acl::ObjectKey::set({fmt::format("q{}", i), fmt::format("q{}", j)}), true});
      }
    }
  }
  return c;
}

}  // namespace

std::uint64_t closed_form_cells(const policy::ModelSpec& model, int M, int Nc, int Nq) {
  const auto m = static_cast<std::uint64_t>(M);
  const auto nc = static_cast<std::uint64_t>(Nc);
  const auto nq = static_cast<std::uint64_t>(Nq);
  switch (model.kind) {
    case ModelKind::kClassical:
    case ModelKind::kNaive:
      return m * (nc + nq);
    case ModelKind::kSubsys: {
      std::uint64_t subsets = 0;
      for (int j = 1; j <= model.k; ++j) subsets += binomial(Nq, j);
      return m * (nc + subsets);
    }
    case ModelKind::kGrp:
      return m * (nc + nq) + nq;
    case ModelKind::kEnt1:
      return m * (nc + nq) + 2 * nq;
    case ModelKind::kEnt2:
      return m * (nc + nq) + 2 * binomial(Nq, 2);
  }
  return 0;
}

EfficiencyReport efficiency_report(const policy::ModelSpec& model, int M, int Nc, int Nq,
                                   const std::vector<int>& lengths) {
  if (M < 1 || Nc < 0 || Nq < 1) throw ConfigError("sizes must satisfy M>=1, Nc>=0, Nq>=1");
  if (model.kind == ModelKind::kSubsys && Nq > 20) {
    throw CapacityError(fmt::format("SUBSYS table over {} registers is too large", Nq));
  }
  EfficiencyReport report;
  report.model = model;
  report.M = M;
  report.Nc = Nc;
  report.Nq = Nq;
  report.formula = closed_form_cells(model, M, Nc, Nq);

  const auto system = acl::System::compile(sweep_config(model, M, Nc, Nq));
  report.cells = system->space_usage();

  const int op = system->find_right("op");
  const int measure = system->find_right("measure");
  for (int x : lengths) {
    if (x < 1 || x > Nq) throw ConfigError(fmt::format("request length {} outside [1, {}]", x, Nq));
    std::vector<int> regs(static_cast<std::size_t>(x));
    for (int i = 0; i < x; ++i) regs[static_cast<std::size_t>(i)] = i;
    const acl::ObjectRef object = system->quantum_object(regs);

    acl::OpSample sample;
    sample.length = static_cast<std::size_t>(x);
    policy::OpCounter auth;
    policy::authorize(model, system->layout(), system->initial_attributes(),
                      acl::Request{0, object, op}, auth);
    sample.auth_ops = auth.ops;

    acl::AttributeStore store = system->initial_attributes();
    const acl::Request m{0, object, measure};
    policy::OpCounter scratch;
    if (policy::authorize(model, system->layout(), store, m, scratch)) {
      policy::OpCounter post;
      policy::post_update(model, system->layout(), store, m, post);
      sample.post_ops = post.ops;
    }
    report.samples.push_back(sample);
    report.auth_slope = std::max(report.auth_slope, static_cast<double>(sample.auth_ops) / x);
    report.post_slope = std::max(report.post_slope,
                                 static_cast<double>(sample.post_ops) / (x * static_cast<double>(Nq)));
  }
  return report;
}

std::string EfficiencyReport::text() const {
  std::string out = fmt::format("cells={} formula={} match={}\n", cells, formula, match());
  for (const auto& s : samples) {
    out += fmt::format("ops x={} auth={} post={}\n", s.length, s.auth_ops, s.post_ops);
  }
  return out;
}

}  // namespace qacl::scenario
