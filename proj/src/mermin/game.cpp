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

#include "qacl/mermin/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "qacl/error.hpp"
#include "qacl/quantum/state.hpp"

namespace qacl::mermin {
namespace {

// Sign of the winning value for input x and output parity.
int sign(std::uint64_t x, int b, int y_parity) {
  const int half = (std::popcount(x) + b) / 2;
  return ((half + y_parity) & 1) ? -1 : 1;
}

// Tuple index t (base 4, player j in digits 2j..2j+1) -> (c, d) masks with
// y_j = c_j xor (d_j and x_j).
void masks_of(std::uint64_t t, int n, std::uint64_t* c, std::uint64_t* d) {
  *c = 0;
  *d = 0;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t digit = (t >> (2 * j)) & 3ULL;
    const LocalMap m = static_cast<LocalMap>(digit);
    if (m == LocalMap::kConst1 || m == LocalMap::kNegation) *c |= 1ULL << j;
    if (m == LocalMap::kIdentity || m == LocalMap::kNegation) *d |= 1ULL << j;
  }
}

DeterministicStrategy decode(std::uint64_t t, int n) {
  DeterministicStrategy s;
  for (int j = 0; j < n; ++j) s.push_back(static_cast<LocalMap>((t >> (2 * j)) & 3ULL));
  return s;
}

}  // namespace

int apply(LocalMap map, int x) {
  switch (map) {
    case LocalMap::kConst0: return 0;
    case LocalMap::kConst1: return 1;
    case LocalMap::kIdentity: return x & 1;
    case LocalMap::kNegation: return (x & 1) ^ 1;
  }
  return 0;
}

const char* map_name(LocalMap map) {
  switch (map) {
    case LocalMap::kConst0: return "const0";
    case LocalMap::kConst1: return "const1";
    case LocalMap::kIdentity: return "id";
    case LocalMap::kNegation: return "neg";
  }
  return "?";
}

void validate(const GameSpec& spec) {
  if (spec.n < 1 || spec.n > 62) {
    throw ConfigError(fmt::format("player count {} out of range [1, 62]", spec.n));
  }
  if (spec.b != 0 && spec.b != 1) throw ConfigError("b must be 0 or 1");
}

double bound(int n) { return std::pow(2.0, 1.0 - static_cast<double>(n) / 2.0); }

std::vector<std::uint64_t> promise_inputs(const GameSpec& spec) {
  validate(spec);
  if (spec.n > 24) throw CapacityError("promise set too large to enumerate");
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < (1ULL << spec.n); ++x) {
    if ((std::popcount(x) & 1) == spec.b) out.push_back(x);
  }
  return out;
}

double expectation_of(const DeterministicStrategy& strategy, const GameSpec& spec) {
  if (static_cast<int>(strategy.size()) != spec.n) {
    throw ConfigError(fmt::format("strategy has {} players, game has {}", strategy.size(), spec.n));
  }
  const auto inputs = promise_inputs(spec);
  std::int64_t total = 0;
  for (std::uint64_t x : inputs) {
    int parity = 0;
    for (int j = 0; j < spec.n; ++j) {
      parity ^= apply(strategy[static_cast<std::size_t>(j)], static_cast<int>((x >> j) & 1ULL));
    }
    total += sign(x, spec.b, parity);
  }
  return static_cast<double>(total) / static_cast<double>(inputs.size());
}

double expectation_of(const MixedStrategy& strategy, const GameSpec& spec) {
  double total = 0.0;
  for (const auto& [w, s] : strategy.components) total += w * expectation_of(s, spec);
  return total;
}

std::vector<std::pair<DeterministicStrategy, double>> rank_deterministic(
    const GameSpec& spec, std::size_t top, int max_players) {
  validate(spec);
  if (spec.n > max_players) {
    throw CapacityError(fmt::format("brute force over 4^{} strategies exceeds the {}-player budget",
                                    spec.n, max_players));
  }
  const auto inputs = promise_inputs(spec);
  const double denom = static_cast<double>(inputs.size());
  const std::uint64_t tuples = 1ULL << (2 * spec.n);
  std::vector<std::pair<std::int64_t, std::uint64_t>> best;  // (score, tuple)
  for (std::uint64_t t = 0; t < tuples; ++t) {
    std::uint64_t c = 0, d = 0;
    masks_of(t, spec.n, &c, &d);
    const int cpar = std::popcount(c) & 1;
    std::int64_t total = 0;
    for (std::uint64_t x : inputs) {
      total += sign(x, spec.b, cpar ^ (std::popcount(d & x) & 1));
    }
    if (best.size() < top || total > best.back().first) {
      auto pos = std::upper_bound(best.begin(), best.end(), total,
                                  [](std::int64_t v, const auto& e) { return v > e.first; });
      best.insert(pos, {total, t});
      if (best.size() > top) best.pop_back();
    }
  }
  std::vector<std::pair<DeterministicStrategy, double>> out;
  for (const auto& [score, t] : best) {
    out.emplace_back(decode(t, spec.n), static_cast<double>(score) / denom);
  }
  return out;
}

double classical_value_bruteforce(const GameSpec& spec) {
  validate(spec);
  if (spec.n > kMaxBruteForcePlayers) {
    throw CapacityError(fmt::format("brute force is limited to {} players", kMaxBruteForcePlayers));
  }
  return rank_deterministic(spec, 1, kMaxBruteForcePlayers).front().second;
}

double quantum_value(const GameSpec& spec) {
  validate(spec);
  if (spec.n > quantum::kDefaultQubitCap) {
    throw CapacityError(fmt::format("{} qubits exceeds simulator capacity", spec.n));
  }
  std::vector<int> all(static_cast<std::size_t>(spec.n));
  for (int j = 0; j < spec.n; ++j) all[static_cast<std::size_t>(j)] = j;
  quantum::StateVector ghz = quantum::prepare_ghz(quantum::StateVector::zero(spec.n), all);
  if (spec.b == 1) ghz = quantum::apply_gate(std::move(ghz), {quantum::GateKind::kS, {0}});

  const auto inputs = promise_inputs(spec);
  double total = 0.0;
  for (std::uint64_t x : inputs) {
    quantum::StateVector s = ghz;
    for (int j = 0; j < spec.n; ++j) {
      if ((x >> j) & 1ULL) s = quantum::apply_gate(std::move(s), {quantum::GateKind::kS, {j}});
    }
    for (int j = 0; j < spec.n; ++j) {
      s = quantum::apply_gate(std::move(s), {quantum::GateKind::kH, {j}});
    }
    const auto probs = quantum::outcome_probabilities(s, all);
    double e = 0.0;
    for (std::uint64_t y = 0; y < probs.size(); ++y) {
      e += probs[y] * sign(x, spec.b, std::popcount(y) & 1);
    }
    total += e;
  }
  return total / static_cast<double>(inputs.size());
}

std::string MerminReport::line() const {
  return fmt::format("n={} b={} classical={:.10f} quantum={:.10f} bound={:.10f}", spec.n, spec.b,
                     classical, quantum, bound);
}

MerminReport analyze(const GameSpec& spec) {
  MerminReport r;
  r.spec = spec;
  r.classical = classical_value_bruteforce(spec);
  r.quantum = quantum_value(spec);
  r.bound = mermin::bound(spec.n);
  return r;
}

}  // namespace qacl::mermin
