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

#include "qacl/rng.hpp"

#include <set>

#include <gtest/gtest.h>

namespace qacl {
namespace {

// Reference mixer, written out from the published constants.
std::uint64_t reference_splitmix(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TEST(Splitmix, MatchesReferenceMixer) {
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  for (std::uint64_t x : {1ULL, 42ULL, 0xFFFFFFFFFFFFFFFFULL, 123456789ULL}) {
    EXPECT_EQ(splitmix64(x), reference_splitmix(x)) << x;
  }
}

TEST(Rng, SameSeedSameStream) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(Rng, DerivedStreamsDiffer) {
  Rng base(7);
  EXPECT_NE(base.derive("effects").next(), base.derive("scheduler").next());
  EXPECT_NE(base.derive(1).next(), base.derive(2).next());
  EXPECT_EQ(base.derive("x").next(), Rng(7).derive("x").next());
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(3);
  double sum = 0.0;
  constexpr int kN = 20000;
  for (int i = 0; i < kN; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // mean 1/2, sd sqrt(1/12/N)
  EXPECT_NEAR(sum / kN, 0.5, 4 * std::sqrt(1.0 / 12 / kN));
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  Rng r(11);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, BernoulliExtremes) {
  Rng r(5);
  for (int i = 0; i < 100; ++i) {
    EXPECT_FALSE(r.bernoulli(0.0));
    EXPECT_TRUE(r.bernoulli(1.0));
  }
}

}  // namespace
}  // namespace qacl
