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

#ifndef QACL_MERMIN_GAME_HPP_
#define QACL_MERMIN_GAME_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qacl::mermin {

// Brute force over 4^n deterministic tuples is capped here.
inline constexpr int kMaxBruteForcePlayers = 8;

// Parity-promise game: inputs x in {0,1}^n with |x| = b (mod 2); the players
// win with value (-1)^((|x|+b)/2 + |y|).
struct GameSpec {
  int n = 3;
  int b = 0;
};

enum class LocalMap { kConst0, kConst1, kIdentity, kNegation };

using DeterministicStrategy = std::vector<LocalMap>;

struct MixedStrategy {
  std::vector<std::pair<double, DeterministicStrategy>> components;  // weights sum to 1
};

int apply(LocalMap map, int x);
const char* map_name(LocalMap map);

// Throws ConfigError unless n >= 1 and b is 0 or 1.
void validate(const GameSpec& spec);

double bound(int n);  // 2^(1 - n/2)

// Inputs of the promise set, bit j = x_j, in increasing order.
std::vector<std::uint64_t> promise_inputs(const GameSpec& spec);

double expectation_of(const DeterministicStrategy& strategy, const GameSpec& spec);
double expectation_of(const MixedStrategy& strategy, const GameSpec& spec);

// Exact maximum over all 4^n deterministic tuples. CapacityError above
// kMaxBruteForcePlayers.
double classical_value_bruteforce(const GameSpec& spec);

// The `top` deterministic tuples of highest expectation (ties broken by
// enumeration order), enumerating all 4^n tuples. Allows up to max_players.
std::vector<std::pair<DeterministicStrategy, double>> rank_deterministic(
    const GameSpec& spec, std::size_t top, int max_players = 10);

// Exact expectation of the shared-GHZ strategy: player j applies S^{x_j}
// then H and measures; for b = 1 the resource carries an extra relative
// phase i so that the promise sign is matched.
double quantum_value(const GameSpec& spec);

struct MerminReport {
  GameSpec spec;
  double classical = 0.0;
  double quantum = 0.0;
  double bound = 0.0;

  // `n=<n> b=<b> classical=<v> quantum=<v> bound=<v>`
  std::string line() const;
};

MerminReport analyze(const GameSpec& spec);

}  // namespace qacl::mermin

#endif  // QACL_MERMIN_GAME_HPP_
