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

#include <gtest/gtest.h>

#include "qacl/error.hpp"

namespace qacl::scenario {
namespace {

using policy::ModelKind;
using policy::ModelSpec;

// Cell count by listing what each model stores.
std::uint64_t enumerate_cells(const ModelSpec& m, int M, int Nc, int Nq) {
  std::uint64_t cells = static_cast<std::uint64_t>(M) * static_cast<std::uint64_t>(Nc);  // classical rows
  std::uint64_t subsets = 0;
  for (std::uint64_t mask = 1; mask < (1ULL << Nq); ++mask) {
    int size = 0;
    for (int i = 0; i < Nq; ++i) size += static_cast<int>((mask >> i) & 1);
    if (m.kind == ModelKind::kSubsys ? size <= m.k : size == 1) ++subsets;
  }
  cells += static_cast<std::uint64_t>(M) * subsets;  // quantum rows
  std::uint64_t pairs = 0;
  for (int a = 0; a < Nq; ++a) {
    for (int b = a + 1; b < Nq; ++b) ++pairs;
  }
  switch (m.kind) {
    case ModelKind::kGrp: cells += static_cast<std::uint64_t>(Nq); break;        // G
    case ModelKind::kEnt1: cells += 2 * static_cast<std::uint64_t>(Nq); break;   // Me, D
    case ModelKind::kEnt2: cells += 2 * pairs; break;                            // Me, D per pair
    default: break;
  }
  return cells;
}

TEST(Efficiency, Examples) {
  EXPECT_EQ(efficiency_report({ModelKind::kSubsys, 2}, 3, 2, 4, {}).cells, 36u);
  EXPECT_EQ(efficiency_report({ModelKind::kGrp, 2}, 3, 2, 4, {}).cells, 22u);
  EXPECT_EQ(efficiency_report({ModelKind::kGrp, 2}, 5, 3, 7, {}).cells, 57u);
  EXPECT_EQ(efficiency_report({ModelKind::kEnt2, 2}, 2, 0, 3, {}).cells, 12u);
  EXPECT_EQ(efficiency_report({ModelKind::kSubsys, 2}, 3, 2, 4, {}).text(),
            "cells=36 formula=36 match=true\n");
}

TEST(Efficiency, CellsMatchFormulaAndEnumeration) {
  const std::vector<ModelSpec> models = {
      {ModelKind::kClassical, 0}, {ModelKind::kNaive, 0}, {ModelKind::kSubsys, 1},
      {ModelKind::kSubsys, 2},    {ModelKind::kSubsys, 3}, {ModelKind::kGrp, 2},
      {ModelKind::kEnt1, 1},      {ModelKind::kEnt2, 2}};
  for (const auto& m : models) {
    for (int M : {1, 3}) {
      for (int Nc : {0, 2}) {
        for (int Nq : {3, 5, 8}) {
          const auto r = efficiency_report(m, M, Nc, Nq, {});
          EXPECT_TRUE(r.match()) << m.id() << " " << M << " " << Nc << " " << Nq;
          EXPECT_EQ(r.cells, enumerate_cells(m, M, Nc, Nq)) << m.id();
        }
      }
    }
  }
}

TEST(Efficiency, AuthorizationIsLinearInRequestLength) {
  const std::vector<int> lengths = {1, 2, 3, 4, 5, 6, 7, 8};
  for (const auto& m : {ModelSpec{ModelKind::kSubsys, 8}, ModelSpec{ModelKind::kGrp, 1},
                        ModelSpec{ModelKind::kEnt1, 1}, ModelSpec{ModelKind::kNaive, 0}}) {
    const auto r = efficiency_report(m, 2, 1, 8, lengths);
    ASSERT_EQ(r.samples.size(), lengths.size());
    for (const auto& s : r.samples) {
      EXPECT_GE(s.auth_ops, s.length) << m.id();  // every element is read
      EXPECT_LE(s.auth_ops, 5 * s.length) << m.id();
    }
  }
}

TEST(Efficiency, Ent2MeasurePostUpdateBound) {
  const auto r = efficiency_report({ModelKind::kEnt2, 2}, 1, 0, 6, {2});
  ASSERT_EQ(r.samples.size(), 1u);
  const auto& s = r.samples.front();
  EXPECT_GE(s.post_ops, 2u);
  EXPECT_LE(s.post_ops, 4u * 2u * 6u);
}

TEST(Efficiency, Errors) {
  EXPECT_THROW(efficiency_report({ModelKind::kSubsys, 3}, 1, 0, 30, {}), CapacityError);
  EXPECT_THROW(efficiency_report({ModelKind::kGrp, 1}, 1, 0, 3, {4}), ConfigError);
  EXPECT_THROW(efficiency_report({ModelKind::kGrp, 1}, 0, 0, 3, {}), ConfigError);
}

}  // namespace
}  // namespace qacl::scenario
