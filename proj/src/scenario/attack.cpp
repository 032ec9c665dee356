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

#include "qacl/scenario/attack.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "qacl/acl/engine.hpp"
#include "qacl/error.hpp"

namespace qacl::scenario {
namespace {

double round10(double v) {
  const double r = std::round(v * 1e10) / 1e10;
  return r == 0.0 ? 0.0 : r;
}

}  // namespace

double mutual_information(const JointCounts& joint) {
  double total = 0.0;
  for (const auto& row : joint) {
    for (auto c : row) total += static_cast<double>(c);
  }
  if (total == 0.0) return 0.0;
  double pa[2] = {0, 0}, pg[2] = {0, 0};
  for (int a = 0; a < 2; ++a) {
    for (int g = 0; g < 2; ++g) {
      const double p = static_cast<double>(joint[a][g]) / total;
      pa[a] += p;
      pg[g] += p;
    }
  }
  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int g = 0; g < 2; ++g) {
      const double p = static_cast<double>(joint[a][g]) / total;
      if (p > 0.0) mi += p * std::log2(p / (pa[a] * pg[g]));
    }
  }
  return mi < 0.0 ? 0.0 : mi;
}

std::vector<int> balanced_secrets(int trials, Rng rng) {
  std::vector<int> out(static_cast<std::size_t>(trials), 0);
  for (int t = trials / 2; t < trials; ++t) out[static_cast<std::size_t>(t)] = 1;
  for (std::size_t i = out.size(); i > 1; --i) {
    std::swap(out[i - 1], out[rng.below(i)]);
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

AttackReport run_attack(const AttackConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be positive");
  const BreachScenario scenario = BreachScenario::build(config.variant, config.n);
  const acl::SchedulerSpec scheduler = acl::SchedulerSpec::scripted(scenario.script());

  std::optional<ClassicalStrategy> strategy = config.strategy;
  if (config.variant.kind == VariantKind::kClassical && !strategy) {
    const auto best = mermin::rank_deterministic({config.n, 0}, 1);
    strategy = ClassicalStrategy::pure(best.front().first);
  }

  AttackReport report;
  report.variant = config.variant.id();
  report.n = config.n;
  report.trials = config.trials;
  report.seed = config.seed;
  const std::vector<int> secrets = balanced_secrets(config.trials, Rng(config.seed).derive("secrets"));
  std::set<std::string> seen_denials;
  const acl::System& sys = *scenario.system();
  const int flip = sys.find_right("flip");
  const int b_reg = sys.find_classical("B");

  std::uint64_t successes = 0;
  for (int t = 0; t < config.trials; ++t) {
    const std::uint64_t seed = trial_seed(config.seed, t);
    report.trial_seeds.push_back(seed);
    const int secret = secrets[static_cast<std::size_t>(t)];
    acl::Engine engine(scenario.system(),
                       scenario.programs(secret, strategy ? &*strategy : nullptr), scheduler,
                       acl::EngineOptions{seed, acl::DenialPolicy::kContinue, 100'000});
    engine.run();

    int flips = 0;
    for (const auto& e : engine.history()) {
      if (!e.authorized) {
        report.all_authorized = false;
        ++report.denied_requests;
        std::string line = sys.render(e);
        if (seen_denials.insert(line).second) report.denials.push_back(std::move(line));
        continue;
      }
      if (e.request.right == flip && e.request.object.kind == acl::ObjectRef::Kind::kClassical &&
          e.request.object.index == b_reg) {
        ++flips;
      }
    }
    const int guess = static_cast<int>(engine.local(player(1), "guess") & 1);
    const int promise = static_cast<int>(engine.local("v", "e") & 1);
    const int b_final = static_cast<int>(engine.classical_value("B") & 1);
    const int a_seen = static_cast<int>(engine.local("v", "a") & 1);
    if (b_final != (a_seen ^ promise ^ (flips & 1))) report.parity_chain_holds = false;
    if ((flips & 1) != promise) report.flips_match_promise = false;
    if (guess == secret) ++successes;
    ++report.joint[static_cast<std::size_t>(secret)][static_cast<std::size_t>(guess)];
  }
  report.success_rate = static_cast<double>(successes) / static_cast<double>(config.trials);
  report.mi_bits = mutual_information(report.joint);
  return report;
}

std::string AttackReport::text() const {
  std::string out = fmt::format(
      "variant={} n={} trials={} seed={} success_rate={:.10f} mi_bits={:.10f} denials={}\n",
      variant, n, trials, seed, success_rate, mi_bits, denials.size());
  if (variant == "naive") out += "note ghz preparation by w1 runs under phase M0\n";
  for (const auto& d : denials) out += "denial " + d + "\n";
  return out;
}

std::string AttackReport::json() const {
  nlohmann::json j;
  j["variant"] = variant;
  j["n"] = n;
  j["trials"] = trials;
  j["seed"] = seed;
  j["success_rate"] = round10(success_rate);
  j["mi_bits"] = round10(mi_bits);
  j["denials"] = denials;
  return j.dump() + "\n";
}

}  // namespace qacl::scenario
