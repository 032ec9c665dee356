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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace qacl::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string data(const std::string& rel) {
  return std::string(QACL_TEST_DATA_DIR) + "/" + rel;
}

TEST(Cli, MerminLine) {
  const auto r = cli({"mermin", "--n", "3", "--b", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "n=3 b=0 classical=0.5000000000 quantum=1.0000000000 bound=0.7071067812\n");
}

TEST(Cli, EfficiencyFirstLine) {
  // SUBSYS k=2 over 3 registers and 2 subjects, 1 classical object:
  // subsets of size 1 or 2 are 6, so 2*6 quantum cells plus 2*1 classical.
  const auto r = cli({"eff", "--model", "subsys", "--k", "2", "--M", "2", "--Nc", "1", "--Nq", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(first_line(r.out), "cells=14 formula=14 match=true");
  // one ops line per request length
  EXPECT_NE(r.out.find("ops x=3 "), std::string::npos);
}

TEST(Cli, FlexSingleAndAll) {
  const auto one = cli({"flex", "--pair", "ent-vs-subsys"});
  EXPECT_EQ(one.code, kExitOk);
  EXPECT_EQ(first_line(one.out), "pair=ent-vs-subsys match=true candidates=32 distinguished=32");
  const auto all = cli({"flex", "--pair", "all"});
  EXPECT_EQ(all.code, kExitOk);
  std::size_t pairs = 0;
  for (std::size_t p = all.out.find("pair="); p != std::string::npos; p = all.out.find("pair=", p + 1)) ++pairs;
  EXPECT_EQ(pairs, 7u);
  EXPECT_EQ(all.out.find("match=false"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"mermin"}).code, kExitUsage);
  EXPECT_EQ(cli({"mermin", "--n", "x", "--b", "0"}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"attack", "--variant", "nope", "--n", "2", "--trials", "1"}).code, kExitConfig);
  EXPECT_EQ(cli({"mermin", "--n", "0", "--b", "0"}).code, kExitConfig);
  EXPECT_EQ(cli({"flex", "--pair", "nope"}).code, kExitConfig);
  EXPECT_EQ(cli({"eff", "--model", "subsys", "--M", "1", "--Nc", "0", "--Nq", "3"}).code, kExitConfig);
  EXPECT_EQ(cli({"eff", "--model", "subsys", "--k", "3", "--M", "1", "--Nc", "0", "--Nq", "30"}).code,
            kExitCapacity);
  EXPECT_EQ(cli({"mermin", "--n", "9", "--b", "0"}).code, kExitCapacity);
  EXPECT_EQ(cli({"parse", data("diagnostics/k_zero.qacl")}).code, kExitConfig);
  EXPECT_EQ(cli({"parse", data("no/such/file.qacl")}).code, kExitConfig);
}

TEST(Cli, AttackTextAndJson) {
  const auto text = cli({"attack", "--variant", "naive", "--n", "2", "--trials", "10", "--seed", "5"});
  EXPECT_EQ(text.code, kExitOk);
  EXPECT_EQ(first_line(text.out),
            "variant=naive n=2 trials=10 seed=5 success_rate=1.0000000000 mi_bits=1.0000000000 denials=0");
  const auto js = cli({"attack", "--variant", "subsys", "--n", "2", "--trials", "10", "--seed", "5",
                       "--format", "json"});
  ASSERT_EQ(js.code, kExitOk);
  const auto j = nlohmann::json::parse(js.out);
  EXPECT_EQ(j["variant"], "subsys:k=2");
  EXPECT_EQ(j["trials"], 10);
  EXPECT_FALSE(j["denials"].empty());
}

TEST(Cli, SeedFromEnvironment) {
  const std::vector<std::string> args = {"attack", "--variant", "ent1", "--n", "2", "--trials", "20"};
  ::setenv("QACL_SEED", "99", 1);
  const auto a = cli(args);
  ::unsetenv("QACL_SEED");
  auto with_flag = args;
  with_flag.insert(with_flag.end(), {"--seed", "99"});
  const auto b = cli(with_flag);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("seed=99"), std::string::npos);
}

TEST(Cli, ParseRendersCanonically) {
  const auto r = cli({"parse", data("configs/01_minimal.qacl")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("model "), std::string::npos);
  // output is itself a fixed point
  const auto tmp = std::filesystem::temp_directory_path() / "qacl_cli_parse.qacl";
  std::ofstream(tmp) << r.out;
  const auto again = cli({"parse", tmp.string()});
  std::filesystem::remove(tmp);
  EXPECT_EQ(again.out, r.out);
}

TEST(Cli, ParseReportsDiagnosticsWithPath) {
  const auto path = data("diagnostics/unknown_key.qacl");
  const auto r = cli({"parse", path});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_EQ(r.err, path + ":3:1: error: unknown key 'colour' [token 'colour']\n");
}

TEST(Cli, RunIsDeterministic) {
  for (const char* f : {"configs/07_ent1_flags.qacl", "configs/10_random_scheduler.qacl"}) {
    const auto a = cli({"run", data(f), "--seed", "3"});
    const auto b = cli({"run", data(f), "--seed", "3"});
    EXPECT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("trial=0 ", 0), 0u) << a.out;
  }
}

// The installed binary and the in-process entry point agree byte for byte.
TEST(Cli, BinaryMatchesInProcess) {
  const std::string cmd = std::string(QACL_CLI_PATH) + " mermin --n 4 --b 1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string got;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) got += buf;
  EXPECT_EQ(::pclose(pipe), 0);
  EXPECT_EQ(got, cli({"mermin", "--n", "4", "--b", "1"}).out);
}

}  // namespace
}  // namespace qacl::cli
