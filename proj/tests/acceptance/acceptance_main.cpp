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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qacl/acl/engine.hpp"
#include "qacl/cli/config_doc.hpp"
#include "qacl/mermin/game.hpp"
#include "qacl/quantum/state.hpp"
#include "qacl/rng.hpp"
#include "qacl/scenario/attack.hpp"
#include "qacl/scenario/efficiency.hpp"
#include "qacl/scenario/witness.hpp"
#include "support/random_ent.hpp"

namespace {

using namespace qacl;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Shell {
  int status;
  std::string out;
};

Shell shell(const std::string& args) {
  const std::string cmd = std::string(QACL_CLI_PATH) + " " + args + " 2>&1";
  Shell r{-1, {}};
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int st = ::pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// 1. Naive breach leaks with certainty.
Verdict naive_breach() {
  Verdict v;
  const auto t0 = Clock::now();
  for (int n = 2; n <= 6; ++n) {
    const auto r = scenario::run_attack({scenario::Variant::parse("naive", n), n, 200, 11, {}});
    v.require(r.success_rate == 1.0, fmt::format("n={} success={}", n, r.success_rate));
    v.require(r.mi_bits == 1.0, fmt::format("n={} mi={}", n, r.mi_bits));
    v.require(r.all_authorized && r.denied_requests == 0, fmt::format("n={} had denials", n));
  }
  const double t = seconds_since(t0);
  v.require(t < 10.0, fmt::format("runtime {:.1f}s", t));
  if (v.pass) v.detail = fmt::format("n=2..6 success=1 mi=1 runtime={:.2f}s", t);
  return v;
}

// 2. Parity game values.
Verdict mermin_values() {
  Verdict v;
  const auto t0 = Clock::now();
  double worst_gap = -1.0;
  for (int n = 2; n <= 8; ++n) {
    for (int b = 0; b <= 1; ++b) {
      const mermin::GameSpec g{n, b};
      const double c = mermin::classical_value_bruteforce(g);
      v.require(c <= mermin::bound(n) + 1e-12, fmt::format("classical({},{})={} above bound", n, b, c));
      worst_gap = std::max(worst_gap, c - mermin::bound(n));
      if (n >= 3) {
        const double q = mermin::quantum_value(g);
        v.require(std::abs(q - 1.0) <= 1e-9, fmt::format("quantum({},{})={}", n, b, q));
      }
    }
  }
  v.require(std::abs(mermin::classical_value_bruteforce({3, 0}) - 0.5) < 1e-12, "classical(3,0)");
  v.require(std::abs(mermin::classical_value_bruteforce({2, 0}) - 1.0) < 1e-12, "classical(2,0)");
  const double t = seconds_since(t0);
  v.require(t < 30.0, fmt::format("runtime {:.1f}s", t));
  if (v.pass) v.detail = fmt::format("max(classical-bound)={:.4f} quantum=1 runtime={:.2f}s", worst_gap, t);
  return v;
}

// 3. Classical colluders stay near guessing. The deterministic family is
// ranked exhaustively (4^9 tuples); the top five are replayed for 20000
// trials. Mixed strategies are checked by exact expectation and a short
// replay each.
Verdict classical_security() {
  Verdict v;
  const auto t0 = Clock::now();
  constexpr int kN = 9;
  const double limit = 0.5 + 0.5 * std::pow(2.0, -3.0);
  const auto variant = scenario::Variant::parse("classical", kN);

  const auto top = mermin::rank_deterministic({kN, 0}, 5);
  v.require(top.front().second <= std::pow(2.0, -3.0) + 1e-12,
            fmt::format("best deterministic expectation {}", top.front().second));
  double worst_top = 0.0, worst_mi = 0.0;
  for (std::size_t i = 0; i < top.size(); ++i) {
    scenario::AttackConfig cfg{variant, kN, 20000, 900 + i,
                               scenario::ClassicalStrategy::pure(top[i].first)};
    const auto r = scenario::run_attack(cfg);
    const double sigma = 0.5 / std::sqrt(20000.0);
    v.require(r.success_rate <= limit + 3 * sigma, fmt::format("top{} success={}", i, r.success_rate));
    v.require(r.mi_bits <= 0.52, fmt::format("top{} mi={}", i, r.mi_bits));
    v.require(r.all_authorized, fmt::format("top{} denied", i));
    worst_top = std::max(worst_top, r.success_rate);
    worst_mi = std::max(worst_mi, r.mi_bits);
  }

  Rng rng(31337);
  double worst_exact = 0.0, worst_replay = 0.0, pooled_exact = 0.0;
  std::uint64_t pooled_wins = 0, pooled_trials = 0;
  constexpr int kShort = 200;
  for (int i = 0; i < 1000; ++i) {
    scenario::ClassicalStrategy s;
    s.p_shared = rng.uniform();
    for (int j = 0; j < kN; ++j) {
      s.when_zero.push_back(static_cast<mermin::LocalMap>(rng.below(4)));
      s.when_one.push_back(static_cast<mermin::LocalMap>(rng.below(4)));
    }
    const double exact = 0.5 + 0.5 * mermin::expectation_of(s.as_mixed(), {kN, 0});
    v.require(exact <= limit + 1e-12, fmt::format("mixed{} exact={}", i, exact));
    const auto r = scenario::run_attack({variant, kN, kShort, 5000 + static_cast<std::uint64_t>(i), s});
    const double sigma = 0.5 / std::sqrt(static_cast<double>(kShort));
    v.require(r.success_rate <= limit + 3 * sigma, fmt::format("mixed{} replay={}", i, r.success_rate));
    v.require(r.mi_bits <= 0.52, fmt::format("mixed{} mi={}", i, r.mi_bits));
    worst_exact = std::max(worst_exact, exact);
    worst_replay = std::max(worst_replay, r.success_rate);
    worst_mi = std::max(worst_mi, r.mi_bits);
    pooled_exact += exact * kShort;
    pooled_wins += r.joint[0][0] + r.joint[1][1];
    pooled_trials += kShort;
  }
  // The replays as a whole agree with the exact expectations.
  const double mean_exact = pooled_exact / static_cast<double>(pooled_trials);
  const double mean_replay = static_cast<double>(pooled_wins) / static_cast<double>(pooled_trials);
  v.require(std::abs(mean_exact - mean_replay) <= 4 * 0.5 / std::sqrt(static_cast<double>(pooled_trials)),
            fmt::format("replay mean {} vs exact {}", mean_replay, mean_exact));

  const double t = seconds_since(t0);
  v.require(t < 120.0, fmt::format("runtime {:.1f}s", t));
  if (v.pass) {
    v.detail = fmt::format(
        "limit={:.4f} top5_max={:.4f} mixed_exact_max={:.4f} mixed_replay_max={:.4f} mi_max={:.4f} runtime={:.1f}s",
        limit, worst_top, worst_exact, worst_replay, worst_mi, t);
  }
  return v;
}

// 4. Lifted systems deny the attack and keep the permitted entanglements.
Verdict secure_liftings() {
  Verdict v;
  constexpr int kN = 4, kTrials = 10000;
  const double sigma = 0.5 / std::sqrt(static_cast<double>(kTrials));
  std::string summary;
  for (const char* id : {"subsys", "grp", "ent1", "ent2"}) {
    const auto variant = scenario::Variant::parse(id, kN);
    const auto r = scenario::run_attack({variant, kN, kTrials, 4242, {}});
    v.require(r.denied_requests >= 1 && !r.denials.empty(), fmt::format("{} no denial", variant.id()));
    v.require(std::abs(r.success_rate - 0.5) <= 3 * sigma, fmt::format("{} success={}", variant.id(), r.success_rate));
    v.require(r.mi_bits <= 0.01, fmt::format("{} mi={}", variant.id(), r.mi_bits));
    summary += fmt::format(" {}:success={:.4f},mi={:.5f}", variant.id(), r.success_rate, r.mi_bits);
    if (!r.denials.empty()) summary += fmt::format(",first[{}]", r.denials.front());
  }
  for (const char* id : {"subsys", "grp"}) {
    const auto s = scenario::BreachScenario::build(scenario::Variant::parse(id, kN), kN);
    const auto& sys = *s.system();
    acl::Engine e(s.system(), s.permitted_probe(), acl::SchedulerSpec::round_robin());
    e.run();
    bool all = !e.history().empty();
    for (const auto& h : e.history()) all = all && h.authorized;
    v.require(all, fmt::format("{} probe denied", id));
    auto q = [&](const char* reg, int off) { return sys.first_qubit(sys.find_quantum(reg)) + off; };
    auto pur = [&](std::vector<int> keep) { return quantum::purity(quantum::partial_trace(e.state(), keep)); };
    // A half of each permitted pair is mixed; the pair and the chain are pure.
    v.require(std::abs(pur({q("C1", 1)}) - 0.5) < 1e-12, fmt::format("{} C1 not entangled", id));
    v.require(std::abs(pur({q("C2", 1)}) - 0.5) < 1e-12, fmt::format("{} C2 not entangled", id));
    v.require(std::abs(pur({q("D3", 0)}) - 0.5) < 1e-12, fmt::format("{} D3 not entangled", id));
    v.require(std::abs(pur({q("C1", 1), q("D1", 0)}) - 1.0) < 1e-12, fmt::format("{} C1D1 not pure", id));
    v.require(std::abs(pur({q("C2", 1), q("D2", 0)}) - 1.0) < 1e-12, fmt::format("{} C2D2 not pure", id));
    v.require(std::abs(pur({q("D3", 0), q("D4", 0), q("D5", 0)}) - 1.0) < 1e-12,
              fmt::format("{} chain not pure", id));
  }
  if (v.pass) v.detail = "permitted probes entangled;" + summary;
  return v;
}

// 5. Flexibility witnesses.
Verdict witnesses() {
  Verdict v;
  for (const auto& id : scenario::witness_pairs()) {
    const auto r = scenario::flexibility_witness(id);
    v.require(r.matches, fmt::format("{} mismatch", id));
    for (const auto& row : r.rows) v.require(row.ok(), fmt::format("{} row {} {}", id, row.system, row.execution));
    v.require(r.distinguished == r.candidates && r.candidates > 0, fmt::format("{} not all distinguished", id));
    const auto cli = shell("flex --pair '" + id + "'");
    v.require(cli.status == 0, fmt::format("flex --pair {} exit {}", id, cli.status));
  }
  if (v.pass) v.detail = fmt::format("{} pairs match, flex exit 0", scenario::witness_pairs().size());
  return v;
}

// 6. Space and time of the models.
Verdict efficiency() {
  using policy::ModelKind;
  using policy::ModelSpec;
  Verdict v;
  // Pinned per-model constants for auth_ops <= c*x.
  constexpr double kLinear = 5.0;
  constexpr double kEnt2 = 4.0;  // auth and measure post-update <= c*x*Nq
  int points = 0;
  double worst_linear = 0.0, worst_ent2_auth = 0.0, worst_ent2_post = 0.0;
  for (int M : {1, 3, 5}) {
    for (int Nc : {0, 2}) {
      for (int Nq = 3; Nq <= 8; ++Nq) {
        std::vector<ModelSpec> models = {{ModelKind::kClassical, 0}, {ModelKind::kNaive, 0},
                                         {ModelKind::kEnt1, 0}, {ModelKind::kEnt2, 0}};
        for (int k = 1; k <= 3; ++k) {
          models.push_back({ModelKind::kSubsys, k});
          models.push_back({ModelKind::kGrp, k});
        }
        std::vector<int> lengths;
        for (int x = 1; x <= Nq; ++x) lengths.push_back(x);
        for (const auto& m : models) {
          const auto r = scenario::efficiency_report(m, M, Nc, Nq, lengths);
          ++points;
          v.require(r.match(), fmt::format("{} M={} Nc={} Nq={} cells={} formula={}", m.id(), M, Nc, Nq,
                                           r.cells, r.formula));
          if (m.kind == ModelKind::kEnt2) {
            for (const auto& s : r.samples) {
              const double xn = static_cast<double>(s.length) * Nq;
              worst_ent2_auth = std::max(worst_ent2_auth, s.auth_ops / xn);
              worst_ent2_post = std::max(worst_ent2_post, s.post_ops / xn);
            }
          } else {
            worst_linear = std::max(worst_linear, r.auth_slope);
          }
        }
      }
    }
  }
  v.require(worst_linear <= kLinear, fmt::format("auth slope {} > {}", worst_linear, kLinear));
  v.require(worst_ent2_auth <= kEnt2, fmt::format("ent2 auth/(x*Nq) {} > {}", worst_ent2_auth, kEnt2));
  v.require(worst_ent2_post <= kEnt2, fmt::format("ent2 post/(x*Nq) {} > {}", worst_ent2_post, kEnt2));
  if (v.pass) {
    v.detail = fmt::format("{} grid points exact; auth/x max={:.2f} (c={}); ent2 auth/(x*Nq) max={:.2f}, "
                           "post/(x*Nq) max={:.2f} (c={})",
                           points, worst_linear, kLinear, worst_ent2_auth, worst_ent2_post, kEnt2);
  }
  return v;
}

// 7. D[X] = true only for pure registers.
Verdict ent_soundness() {
  Verdict v;
  long checks = 0;
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto run = qacl::testing::random_ent1_execution(0xE17ULL * 1000 + seed, 6, 50);
    checks += run.checks;
    violations += run.violations;
    if (run.violations > 0) v.require(false, fmt::format("seed {}: {}", seed, run.first_violation));
  }
  v.require(checks > 0, "no checks made");
  if (v.pass) v.detail = fmt::format("500 executions, {} checks, 0 counterexamples", checks);
  return v;
}

// 8. Simulator sanity.
Verdict simulator() {
  using namespace qacl::quantum;
  Verdict v;
  Rng r(8);
  double drift = 0.0;
  for (int c = 0; c < 5; ++c) {
    auto s = StateVector::zero(6);
    for (int i = 0; i < 1000; ++i) {
      static constexpr GateKind kinds[] = {GateKind::kH, GateKind::kS, GateKind::kT, GateKind::kY,
                                           GateKind::kCnot, GateKind::kSwap};
      const GateKind k = kinds[r.below(6)];
      const int a = static_cast<int>(r.below(6));
      int b = static_cast<int>(r.below(5));
      if (b >= a) ++b;
      const bool two = k == GateKind::kCnot || k == GateKind::kSwap;
      s = apply_gate(std::move(s), two ? GateSpec{k, {a, b}} : GateSpec{k, {a}});
    }
    drift = std::max(drift, std::abs(s.norm_squared() - 1.0));
  }
  v.require(drift <= 1e-10, fmt::format("norm drift {}", drift));

  const double h = 1.0 / std::sqrt(2.0);
  auto epr = apply_gate(apply_gate(StateVector::zero(2), {GateKind::kH, {0}}), {GateKind::kCnot, {0, 1}});
  const std::vector<std::complex<double>> epr_want = {h, 0.0, 0.0, h};
  double err = 0.0;
  for (std::size_t i = 0; i < 4; ++i) err = std::max(err, std::abs(epr.amplitudes()[i] - epr_want[i]));
  for (int n = 2; n <= 8; ++n) {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
    const auto g = prepare_ghz(StateVector::zero(n), t);
    const auto& a = g.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double want = (i == 0 || i + 1 == a.size()) ? h : 0.0;
      err = std::max(err, std::abs(a[i] - want));
    }
  }
  v.require(err <= 1e-12, fmt::format("table error {}", err));

  Rng shots(10000);
  int ones = 0;
  const std::vector<int> q0 = {0};
  for (int i = 0; i < 10000; ++i) {
    auto [m, post] = measure_complete(apply_gate(StateVector::zero(1), {GateKind::kH, {0}}), q0, shots);
    ones += static_cast<int>(m.outcome);
  }
  const double freq = ones / 10000.0;
  v.require(std::abs(freq - 0.5) <= 3 * 0.005, fmt::format("H frequency {}", freq));
  if (v.pass) v.detail = fmt::format("drift={:.1e} table_err={:.1e} H_freq={:.4f}", drift, err, freq);
  return v;
}

// 9. Determinism of the binary and the document format.
Verdict cli_and_parsing() {
  Verdict v;
  const fs::path data(QACL_TEST_DATA_DIR);
  const std::vector<std::string> commands = {
      "attack --variant naive --n 4 --trials 50 --seed 3",
      "attack --variant ent2 --n 4 --trials 50 --seed 3 --format json",
      "attack --variant classical --n 5 --trials 50",
      "mermin --n 5 --b 1",
      "flex --pair all",
      "eff --model ent2 --M 2 --Nc 1 --Nq 5",
      "run " + (data / "configs" / "10_random_scheduler.qacl").string() + " --seed 9",
  };
  for (const auto& c : commands) {
    const auto a = shell(c), b = shell(c);
    v.require(a.status == 0 && a.out == b.out && !a.out.empty(), "not reproducible: " + c);
  }
  int docs = 0;
  for (const auto& e : fs::directory_iterator(data / "configs")) {
    if (e.path().extension() != ".qacl") continue;
    ++docs;
    const auto first = cli::parse_config(slurp(e.path()));
    if (!first.ok()) {
      v.require(false, "corpus parse " + e.path().filename().string());
      continue;
    }
    const auto text = cli::render(*first.document);
    const auto second = cli::parse_config(text);
    v.require(second.ok() && *second.document == *first.document && cli::render(*second.document) == text,
              "round trip " + e.path().filename().string());
  }
  v.require(docs == 20, fmt::format("corpus has {} documents", docs));
  int goldens = 0;
  for (const char* name : {"k_zero", "undeclared_grant", "unknown_key", "bad_mnemonic", "missing_model"}) {
    const auto base = data / "diagnostics" / name;
    const auto r = cli::parse_config(slurp(base.string() + ".qacl"));
    std::string got;
    for (const auto& d : r.diagnostics) got += d.text() + "\n";
    v.require(!r.ok() && got == slurp(base.string() + ".expected"), std::string("golden ") + name);
    ++goldens;
  }
  if (v.pass) {
    v.detail = fmt::format("{} commands byte-identical, {} documents round-trip, {} diagnostic goldens exact",
                           commands.size(), docs, goldens);
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"1 naive breach", naive_breach},       {"2 parity game", mermin_values},
      {"3 classical security", classical_security}, {"4 secure liftings", secure_liftings},
      {"5 flexibility witnesses", witnesses}, {"6 efficiency", efficiency},
      {"7 ent1 soundness", ent_soundness},    {"8 simulator", simulator},
      {"9 cli and parsing", cli_and_parsing},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failed;
    std::printf("%s criterion %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
