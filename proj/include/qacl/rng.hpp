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

#ifndef QACL_RNG_HPP_
#define QACL_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace qacl {

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic random stream. Child streams derived with `derive` are
// independent of the parent's consumption, so results do not depend on
// evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  Rng derive(std::uint64_t stream) const;
  Rng derive(std::string_view name) const;

  std::uint64_t next() { return gen_(); }
  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  // Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }
  bool bit() { return (next() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace qacl

#endif  // QACL_RNG_HPP_
