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

#include "qacl/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qacl/acl/engine.hpp"
#include "qacl/cli/config_doc.hpp"
#include "qacl/error.hpp"
#include "qacl/mermin/game.hpp"
#include "qacl/scenario/attack.hpp"
#include "qacl/scenario/efficiency.hpp"
#include "qacl/scenario/witness.hpp"

namespace qacl::cli {
namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("QACL_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::string_view s(env);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(fmt::format("QACL_SEED is not an unsigned integer: '{}'", s));
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document parse_or_throw(const std::string& path, std::ostream& err, bool& failed) {
  auto result = parse_config(read_file(path));
  if (!result.ok()) {
    for (const auto& d : result.diagnostics) err << path << ":" << d.text() << "\n";
    failed = true;
    return {};
  }
  failed = false;
  return std::move(*result.document);
}

int cmd_run(const std::string& path, const std::optional<std::uint64_t>& seed_flag,
            std::ostream& out, std::ostream& err) {
  bool failed = false;
  const Document doc = parse_or_throw(path, err, failed);
  if (failed) return kExitConfig;
  const Loaded loaded = load(doc);
  const auto system = acl::System::compile(loaded.config);
  const std::uint64_t seed = seed_flag || std::getenv("QACL_SEED") ? resolve_seed(seed_flag) : loaded.seed;
  for (int t = 0; t < loaded.trials; ++t) {
    const std::uint64_t s = loaded.trials == 1 ? seed : scenario::trial_seed(seed, t);
    acl::Engine engine(system, loaded.programs, loaded.scheduler, acl::EngineOptions{s});
    engine.run();
    out << fmt::format("trial={} seed={} slots={}\n", t, s, engine.slots_used());
    out << engine.export_history();
    for (int c = 0; c < system->num_classical_registers(); ++c) {
      out << fmt::format("final {}={}\n", system->classical_name(c),
                         engine.classical_value(system->classical_name(c)));
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Access control for classical-quantum hybrid systems", "qacl"};
  app.require_subcommand(1, 1);

  std::string variant = "naive";
  std::string scenario_name = "breach";
  std::string format = "text";
  int n = 4;
  int trials = 200;
  std::optional<std::uint64_t> seed;
  auto* attack = app.add_subcommand("attack", "run the breach attack against a model variant");
  attack->add_option("--scenario", scenario_name, "scenario name")->check(CLI::IsMember({"breach"}));
  attack->add_option("--variant", variant, "classical, naive, subsys[:k=K], grp[:k=K], ent1, ent2")->required();
  attack->add_option("--n", n, "number of colluding players")->required();
  attack->add_option("--trials", trials, "trial count")->check(CLI::PositiveNumber);
  attack->add_option("--seed", seed, "base seed");
  attack->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  int players = 3;
  int b = 0;
  auto* mermin_cmd = app.add_subcommand("mermin", "classical and quantum values of the parity game");
  mermin_cmd->add_option("--n", players, "players")->required();
  mermin_cmd->add_option("--b", b, "promise parity bit")->required()->check(CLI::IsMember({0, 1}));

  std::string pair;
  auto* flex = app.add_subcommand("flex", "flexibility witness for a model pair");
  flex->add_option("--pair", pair, "pair id or 'all'")->required();

  std::string model;
  int M = 1, Nc = 0, Nq = 1;
  std::optional<int> k;
  auto* eff = app.add_subcommand("eff", "space and operation counts for a model");
  eff->add_option("--model", model, "model id")->required();
  eff->add_option("--M", M, "subjects")->required();
  eff->add_option("--Nc", Nc, "classical registers")->required();
  eff->add_option("--Nq", Nq, "quantum registers")->required();
  eff->add_option("--k", k, "SUBSYS size bound or GRP label count");

  std::string path;
  auto* parse_cmd = app.add_subcommand("parse", "check a configuration file and print its canonical form");
  parse_cmd->add_option("file", path, "configuration file")->required();
  auto* run_cmd = app.add_subcommand("run", "execute a configuration file");
  run_cmd->add_option("file", path, "configuration file")->required();
  run_cmd->add_option("--seed", seed, "engine seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (attack->parsed()) {
      scenario::AttackConfig config;
      config.variant = scenario::Variant::parse(variant, n);
      config.n = n;
      config.trials = trials;
      config.seed = resolve_seed(seed);
      const auto report = scenario::run_attack(config);
      out << (format == "json" ? report.json() : report.text());
      return kExitOk;
    }
    if (mermin_cmd->parsed()) {
      out << mermin::analyze(mermin::GameSpec{players, b}).line() << "\n";
      return kExitOk;
    }
    if (flex->parsed()) {
      std::vector<std::string> pairs = {pair};
      if (pair == "all") pairs = scenario::witness_pairs();
      bool all_match = true;
      for (const auto& p : pairs) {
        const auto report = scenario::flexibility_witness(p);
        out << report.text();
        all_match = all_match && report.matches;
      }
      return all_match ? kExitOk : kExitMismatch;
    }
    if (eff->parsed()) {
      std::string id = model;
      if ((model == "subsys" || model == "grp")) {
        if (!k) throw ConfigError(fmt::format("--k is required for model '{}'", model));
        id = fmt::format("{}:k={}", model, *k);
      }
      const auto spec = policy::ModelSpec::parse(id);
      std::vector<int> lengths;
      for (int x = 1; x <= std::min(Nq, 8); ++x) lengths.push_back(x);
      out << scenario::efficiency_report(spec, M, Nc, Nq, lengths).text();
      return kExitOk;
    }
    if (parse_cmd->parsed()) {
      bool failed = false;
      const Document doc = parse_or_throw(path, err, failed);
      if (failed) return kExitConfig;
      out << render(doc);
      return kExitOk;
    }
    if (run_cmd->parsed()) return cmd_run(path, seed, out, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qacl::cli
