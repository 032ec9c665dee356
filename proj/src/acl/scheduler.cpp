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

#include "qacl/acl/scheduler.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "qacl/error.hpp"

namespace qacl::acl {
namespace {

int index_of(const std::vector<std::string>& subjects, const std::string& name) {
  auto it = std::find(subjects.begin(), subjects.end(), name);
  if (it == subjects.end()) {
    throw ConfigError(fmt::format("scheduler names undeclared subject '{}'", name));
  }
  return static_cast<int>(it - subjects.begin());
}

}  // namespace

SchedulerSpec SchedulerSpec::scripted(std::vector<std::string> script) {
  SchedulerSpec s;
  s.kind = Kind::kScripted;
  s.script = std::move(script);
  return s;
}

SchedulerSpec SchedulerSpec::round_robin() { return SchedulerSpec{}; }

SchedulerSpec SchedulerSpec::seeded_random(std::uint64_t seed) {
  SchedulerSpec s;
  s.kind = Kind::kSeededRandom;
  s.seed = seed;
  return s;
}

SchedulerSpec SchedulerSpec::prefix_function(
    std::unordered_map<std::uint64_t, std::string> table, std::string fallback) {
  SchedulerSpec s;
  s.kind = Kind::kPrefixFunction;
  s.prefix_table = std::move(table);
  s.fallback = std::move(fallback);
  return s;
}

Scheduler::Scheduler(const SchedulerSpec& spec, const std::vector<std::string>& subjects)
    : kind_(spec.kind),
      num_subjects_(static_cast<int>(subjects.size())),
      rng_(Rng(spec.seed).derive("scheduler")) {
  for (const auto& name : spec.script) script_.push_back(index_of(subjects, name));
  for (const auto& [hash, name] : spec.prefix_table) {
    prefix_.emplace(hash, index_of(subjects, name));
  }
  if (kind_ == SchedulerSpec::Kind::kPrefixFunction) {
    fallback_ = index_of(subjects, spec.fallback);
  }
}

std::optional<int> Scheduler::next_round_robin(const std::vector<bool>& halted) {
  for (int tries = 0; tries < num_subjects_; ++tries) {
    const int s = rr_next_;
    rr_next_ = (rr_next_ + 1) % num_subjects_;
    if (!halted[static_cast<std::size_t>(s)]) return s;
  }
  return std::nullopt;
}

std::optional<int> Scheduler::next(const std::vector<bool>& halted,
                                   std::uint64_t prefix_hash) {
  if (num_subjects_ == 0) return std::nullopt;
  if (std::all_of(halted.begin(), halted.end(), [](bool h) { return h; })) {
    return std::nullopt;
  }
  switch (kind_) {
    case SchedulerSpec::Kind::kScripted:
      if (cursor_ < script_.size()) return script_[cursor_++];
      return next_round_robin(halted);
    case SchedulerSpec::Kind::kRoundRobin:
      return next_round_robin(halted);
    case SchedulerSpec::Kind::kSeededRandom: {
      std::vector<int> live;
      for (int s = 0; s < num_subjects_; ++s) {
        if (!halted[static_cast<std::size_t>(s)]) live.push_back(s);
      }
      return live[rng_.below(live.size())];
    }
    case SchedulerSpec::Kind::kPrefixFunction: {
      auto it = prefix_.find(prefix_hash);
      return it == prefix_.end() ? fallback_ : it->second;
    }
  }
  return std::nullopt;
}

}  // namespace qacl::acl
