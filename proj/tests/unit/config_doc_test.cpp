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

#include "qacl/cli/config_doc.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "qacl/acl/engine.hpp"
#include "qacl/rng.hpp"

namespace qacl::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> files(const char* dir, const char* ext) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(fs::path(QACL_TEST_DATA_DIR) / dir)) {
    if (e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ConfigDoc, MinimalDocument) {
  const auto r = parse_config("model classical\nsubjects u\nprogram u :\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.document->model, "classical");
  EXPECT_EQ(r.document->subjects, std::vector<std::string>{"u"});
  ASSERT_EQ(r.document->programs.size(), 1u);
  EXPECT_TRUE(r.document->programs[0].code.empty());
}

TEST(ConfigDoc, CorpusRoundTrips) {
  const auto corpus = files("configs", ".qacl");
  ASSERT_EQ(corpus.size(), 20u);
  for (const auto& path : corpus) {
    const auto first = parse_config(slurp(path));
    ASSERT_TRUE(first.ok()) << path << ": " << first.diagnostics.front().text();
    const std::string text = render(*first.document);
    const auto second = parse_config(text);
    ASSERT_TRUE(second.ok()) << path << "\n" << text;
    EXPECT_EQ(*second.document, *first.document) << path;
    EXPECT_EQ(render(*second.document), text) << path;
  }
}

TEST(ConfigDoc, CorpusLoadsAndRuns) {
  for (const auto& path : files("configs", ".qacl")) {
    const auto doc = parse_config(slurp(path));
    ASSERT_TRUE(doc.ok()) << path;
    const Loaded loaded = load(*doc.document);
    const auto system = acl::System::compile(loaded.config);
    acl::Engine e(system, loaded.programs, loaded.scheduler, acl::EngineOptions{loaded.seed});
    e.run();
    EXPECT_TRUE(e.finished()) << path;
  }
}

TEST(ConfigDoc, DiagnosticGoldens) {
  const auto cases = files("diagnostics", ".qacl");
  ASSERT_GE(cases.size(), 3u);
  for (const auto& path : cases) {
    auto expected_path = path;
    expected_path.replace_extension(".expected");
    const auto r = parse_config(slurp(path));
    std::string got;
    for (const auto& d : r.diagnostics) got += d.text() + "\n";
    EXPECT_EQ(got, slurp(expected_path)) << path;
    EXPECT_EQ(r.ok(), got.empty()) << path;
  }
}

TEST(ConfigDoc, DiagnosticsCarryPositions) {
  const auto r = parse_config("model naive\nsubjects u\nclassical A:0\ngrant w A read\n");
  ASSERT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[0].line, 3);
  EXPECT_EQ(r.diagnostics[0].column, 13);
  EXPECT_EQ(r.diagnostics[0].token, "0");
  EXPECT_EQ(r.diagnostics[1].line, 4);
  EXPECT_EQ(r.diagnostics[1].column, 7);
  EXPECT_EQ(r.diagnostics[1].token, "w");
}

TEST(ConfigDoc, RejectsDuplicatesAndReuse) {
  EXPECT_FALSE(parse_config("model naive\nmodel classical\n").ok());
  EXPECT_FALSE(parse_config("model naive\nsubjects u u\n").ok());
  EXPECT_FALSE(parse_config("model naive\nsubjects u\nclassical u:1\n").ok());
  EXPECT_FALSE(parse_config("model naive\nsubjects u\nprogram u :\nprogram u :\n").ok());
  EXPECT_FALSE(parse_config("model naive\nseed 1\nseed 2\n").ok());
  EXPECT_FALSE(parse_config("model grp k=0\n").ok());
  EXPECT_FALSE(parse_config("model naive\ntrials 0\n").ok());
  EXPECT_FALSE(parse_config("model naive\nsubjects u\nprogram u : write(A,1)\n").ok());
  EXPECT_FALSE(parse_config("model naive\nsubjects u\nclassical A:1\nprogram u : write(A,xor(1))\n").ok());
  EXPECT_FALSE(parse_config("model naive\nsubjects u\nprogram u : h(\n").ok());
}

TEST(ConfigDoc, SubsetKeysAreSorted) {
  const auto r = parse_config("model subsys:k=2\nsubjects u\nquantum b:1 a:1\ngrant u {b,a} H\n");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.document->grants[0].object.names, (std::vector<std::string>{"a", "b"}));
  EXPECT_NE(render(*r.document).find("grant u {a,b} H"), std::string::npos);
}

TEST(ConfigDoc, BuildProgramTranslatesMnemonics) {
  std::vector<Mnemonic> code = {{"h", {"Q.1"}, ""},
                                {"measure", {"m", "Q", "R"}, "all"},
                                {"setattr", {"attr:Mq[v,X1]", "{H,CNOT}"}, ""},
                                {"flipif", {"bit(m,1)", "B"}, ""},
                                {"halt", {}, ""}};
  const auto p = build_program(code);
  ASSERT_EQ(p.code.size(), 5u);
  const auto& g = std::get<acl::ApplyGate>(p.code[0]);
  EXPECT_EQ(g.kind, quantum::GateKind::kH);
  EXPECT_EQ(g.targets[0], acl::QubitRef::at("Q", 1));
  const auto& m = std::get<acl::MeasureQ>(p.code[1]);
  EXPECT_EQ(m.registers, (std::vector<std::string>{"Q", "R"}));
  EXPECT_EQ(m.right, "all");
  const auto& s = std::get<acl::SetAttrCell>(p.code[2]);
  EXPECT_EQ(s.cell.attr, "Mq");
  EXPECT_EQ(s.rights, (std::vector<std::string>{"H", "CNOT"}));
  EXPECT_TRUE(std::holds_alternative<acl::Halt>(p.code[4]));
}

// ---- random documents ----

Document random_document(Rng& r) {
  Document d;
  d.system = "s" + std::to_string(r.below(100));
  const char* models[] = {"classical", "naive", "subsys:k=1", "grp:k=2", "ent1", "ent2"};
  d.model = models[r.below(6)];
  const int ns = 1 + static_cast<int>(r.below(3));
  for (int i = 0; i < ns; ++i) d.subjects.push_back("s" + std::to_string(i));
  const int nc = static_cast<int>(r.below(3));
  for (int i = 0; i < nc; ++i) d.classical.push_back({"C" + std::to_string(i), 1 + static_cast<int>(r.below(8))});
  const int nq = 1 + static_cast<int>(r.below(3));
  for (int i = 0; i < nq; ++i) d.quantum.push_back({"Q" + std::to_string(i), 1 + static_cast<int>(r.below(2))});
  if (r.bit()) d.guards.push_back("Mq");
  const char* rights[] = {"read", "write", "H", "CNOT", "QFT(2)", "all"};
  for (int i = 0; i < 4; ++i) {
    std::vector<std::string> rs = {rights[r.below(6)]};
    if (r.bit()) rs.push_back(rights[r.below(6)]);
    const auto& s = d.subjects[r.below(d.subjects.size())];
    if (nc > 0 && r.bit()) {
      d.grants.push_back({s, acl::ObjectKey::name(d.classical[r.below(d.classical.size())].name), rs});
    } else if (nq > 1 && r.bit()) {
      d.grants.push_back({s, acl::ObjectKey::set({"Q0", "Q1"}), rs});
    } else {
      d.grants.push_back({s, acl::ObjectKey::name(d.quantum[r.below(d.quantum.size())].name), rs});
    }
  }
  if (r.bit()) d.groups.push_back({"Q0", 1 + static_cast<int>(r.below(2))});
  if (r.bit()) d.entangle_allow.push_back({acl::ObjectKey::name("Q0"), r.bit()});
  ProgramBlock p;
  p.subject = d.subjects[0];
  const std::vector<Mnemonic> menu = {{"h", {"Q0"}, ""},
                                      {"h", {"Q0.0"}, "all"},
                                      {"measure", {"m", "Q0"}, ""},
                                      {"sample", {"x", "3", "1"}, ""},
                                      {"let", {"y", "xor(x,halfpar(m))"}, ""},
                                      {"readattr", {"attr:Mq[s0,Q0]", "v"}, ""},
                                      {"skip", {}, ""},
                                      {"halt", {}, ""}};
  for (int i = 0; i < static_cast<int>(r.below(6)); ++i) p.code.push_back(menu[r.below(menu.size())]);
  d.programs.push_back(p);
  if (r.bit()) d.scheduler = SchedulerDecl{SchedulerDecl::Kind::kRandom, {}, r.below(1000)};
  if (r.bit()) d.seed = r.below(1 << 20);
  if (r.bit()) d.trials = 1 + static_cast<int>(r.below(9));
  return d;
}

// Property: rendering any well-formed document and parsing it back is the
// identity.
TEST(ConfigDoc, RandomDocumentsRoundTrip) {
  Rng r(2718);
  for (int i = 0; i < 300; ++i) {
    const Document d = random_document(r);
    const auto back = parse_config(render(d));
    ASSERT_TRUE(back.ok()) << render(d) << back.diagnostics.front().text();
    ASSERT_EQ(*back.document, d) << render(d);
  }
}

}  // namespace
}  // namespace qacl::cli
