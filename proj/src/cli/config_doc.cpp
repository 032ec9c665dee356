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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <type_traits>

#include <fmt/format.h>

#include "qacl/error.hpp"
#include "qacl/policy/models.hpp"
#include "qacl/quantum/state.hpp"

namespace qacl::cli {
namespace {

using acl::Expr;
using acl::ObjectKey;

struct Token {
  std::string text;
  int col = 0;
  bool punct = false;
};

constexpr std::string_view kPunct = "{}[],:@";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (is_space(c)) {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (kPunct.find(c) != std::string_view::npos) {
      out.push_back({std::string(1, c), col, true});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j]) && line[j] != '#' &&
           kPunct.find(line[j]) == std::string_view::npos) {
      ++j;
    }
    out.push_back({std::string(line.substr(i, j - i)), col, false});
    i = j;
  }
  return out;
}

// Thrown inside the line parser, turned into a Diagnostic by the caller.
struct Failure {
  int col;
  std::string message;
  std::string token;
};

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
  });
}

template <typename T>
std::optional<T> to_int(std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int end_col)
      : tokens_(std::move(tokens)), end_col_(end_col) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  bool peek_is(std::string_view text) const { return !done() && peek().text == text; }

  Token next(std::string_view what) {
    if (done()) throw Failure{end_col_, fmt::format("expected {}", what), ""};
    return tokens_[pos_++];
  }

  Token word(std::string_view what) {
    Token t = next(what);
    if (t.punct) throw Failure{t.col, fmt::format("expected {}", what), t.text};
    return t;
  }

  Token name(std::string_view what) {
    Token t = word(what);
    if (!is_ident(t.text)) throw Failure{t.col, fmt::format("invalid {}", what), t.text};
    return t;
  }

  void expect(std::string_view punct) {
    Token t = next(fmt::format("'{}'", punct));
    if (t.text != punct) throw Failure{t.col, fmt::format("expected '{}'", punct), t.text};
  }

  template <typename T>
  T integer(std::string_view what) {
    Token t = word(what);
    auto v = to_int<T>(t.text);
    if (!v) throw Failure{t.col, fmt::format("expected {}", what), t.text};
    return *v;
  }

  void finish() {
    if (!done()) throw Failure{peek().col, "unexpected trailing token", peek().text};
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int end_col_;
};

struct Scope {
  std::set<std::string> subjects;
  std::set<std::string> classical;
  std::set<std::string> quantum;
  std::set<std::string> guards;

  bool object(const std::string& n) const {
    return classical.count(n) || quantum.count(n) || guards.count(n);
  }
  bool any(const std::string& n) const { return subjects.count(n) || object(n); }
};

// OBJKEY := NAME | `{` NAME (`,` NAME)* `}` | `attr:` NAME `[` keylist `]`
std::pair<ObjectKey, std::vector<Token>> parse_key(LineParser& p) {
  std::vector<Token> refs;
  if (p.peek_is("{")) {
    p.expect("{");
    std::vector<std::string> members;
    while (true) {
      Token t = p.name("register name");
      members.push_back(t.text);
      refs.push_back(t);
      if (p.peek_is(",")) {
        p.expect(",");
        continue;
      }
      p.expect("}");
      break;
    }
    std::sort(members.begin(), members.end());
    return {ObjectKey::set(std::move(members)), refs};
  }
  Token first = p.name("object");
  if (first.text == "attr" && p.peek_is(":")) {
    p.expect(":");
    Token attr = p.name("attribute name");
    p.expect("[");
    std::vector<std::string> key;
    while (true) {
      Token t = p.name("cell key");
      key.push_back(t.text);
      refs.push_back(t);
      if (p.peek_is(",")) {
        p.expect(",");
        continue;
      }
      p.expect("]");
      break;
    }
    return {ObjectKey::cell(attr.text, std::move(key)), refs};
  }
  refs.push_back(first);
  return {ObjectKey::name(first.text), refs};
}

std::vector<std::string> parse_rights(LineParser& p) {
  std::vector<std::string> rights;
  while (true) {
    rights.push_back(p.word("right").text);
    if (!p.peek_is(",")) break;
    p.expect(",");
  }
  return rights;
}

std::string render_key(const ObjectKey& key) {
  switch (key.kind) {
    case ObjectKey::Kind::kName:
      return key.names.front();
    case ObjectKey::Kind::kSet:
      return fmt::format("{{{}}}", fmt::join(key.names, ","));
    case ObjectKey::Kind::kCell:
      return fmt::format("attr:{}[{}]", key.attr, fmt::join(key.names, ","));
  }
  return {};
}

// ---- program mnemonics ----

struct MnemonicAt {
  Mnemonic m;
  int col;
};

std::vector<MnemonicAt> lex_mnemonics(std::string_view line, std::size_t start) {
  std::vector<MnemonicAt> out;
  std::size_t i = start;
  const auto fail = [&](std::size_t at, std::string msg, std::string tok) {
    throw Failure{static_cast<int>(at) + 1, std::move(msg), std::move(tok)};
  };
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (is_space(c) || c == ';') {
      ++i;
      continue;
    }
    MnemonicAt at;
    at.col = static_cast<int>(i) + 1;
    std::size_t j = i;
    while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
    if (j == i) fail(i, "expected instruction", std::string(1, c));
    at.m.name = std::string(line.substr(i, j - i));
    i = j;
    if (i < line.size() && line[i] == '(') {
      int depth = 0;
      std::string cur;
      std::size_t k = i;
      for (; k < line.size(); ++k) {
        const char ch = line[k];
        if (ch == '(' || ch == '[' || ch == '{') {
          if (depth++ == 0) continue;
        } else if (ch == ')' || ch == ']' || ch == '}') {
          if (--depth == 0) break;
        } else if (ch == ',' && depth == 1) {
          at.m.args.push_back(cur);
          cur.clear();
          continue;
        }
        if (!is_space(ch)) cur += ch;
      }
      if (k >= line.size()) fail(i, "unbalanced parentheses", at.m.name);
      if (line[k] != ')') fail(k, "mismatched bracket", std::string(1, line[k]));
      if (!cur.empty() || !at.m.args.empty()) at.m.args.push_back(cur);
      i = k + 1;
    }
    if (i < line.size() && line[i] == '@') {
      std::size_t k = ++i;
      int depth = 0;
      while (k < line.size() && ((!is_space(line[k]) && line[k] != ';') || depth > 0)) {
        if (line[k] == '(') ++depth;
        if (line[k] == ')') --depth;
        ++k;
      }
      at.m.right = std::string(line.substr(i, k - i));
      if (at.m.right.empty()) fail(i - 1, "missing right after '@'", "@");
      i = k;
    }
    if (i < line.size() && !is_space(line[i]) && line[i] != ';' && line[i] != '#') {
      fail(i, "expected whitespace between instructions", std::string(1, line[i]));
    }
    out.push_back(std::move(at));
  }
  return out;
}

std::string strip_offset(const std::string& ref) { return ref.substr(0, ref.find('.')); }

// Register or object names a mnemonic refers to, for declaration checks.
std::vector<std::string> referenced_objects(const Mnemonic& m) {
  static const std::set<std::string> gates = {"h", "x", "y", "z", "s", "sdg", "t",
                                              "id", "cnot", "swap", "qft"};
  std::vector<std::string> out;
  if ((m.name == "write" || m.name == "read") && !m.args.empty()) {
    out.push_back(strip_offset(m.args[0]));
  } else if (gates.count(m.name)) {
    for (const auto& a : m.args) {
      if (a.rfind("pool.", 0) != 0) out.push_back(strip_offset(a));
    }
  } else if (m.name == "measure") {
    for (std::size_t i = 1; i < m.args.size(); ++i) out.push_back(m.args[i]);
  } else if (m.name == "flipif" && m.args.size() == 2) {
    out.push_back(m.args[1]);
  }
  return out;
}

class ExprParser {
 public:
  ExprParser(std::string_view text, acl::Program& program) : s_(text), program_(program) {}

  Expr parse() {
    Expr e = expr();
    if (i_ != s_.size()) fail("trailing characters");
    return e;
  }

 private:
  [[noreturn]] void fail(std::string_view what) const {
    throw ConfigError(fmt::format("bad expression '{}': {}", s_, what));
  }

  Expr expr() {
    if (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) {
      std::size_t j = i_ + 1;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      auto v = to_int<std::int64_t>(s_.substr(i_, j - i_));
      if (!v) fail("bad integer");
      i_ = j;
      return Expr::constant(*v);
    }
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    if (j == i_) fail("expected a name or integer");
    const std::string name(s_.substr(i_, j - i_));
    i_ = j;
    if (i_ >= s_.size() || s_[i_] != '(') return Expr::var(program_.var(name));
    ++i_;
    std::vector<Expr> args;
    std::optional<int> index;
    args.push_back(expr());
    while (i_ < s_.size() && s_[i_] == ',') {
      ++i_;
      if (name == "bit" && args.size() == 1) {
        std::size_t k = i_;
        while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
        index = to_int<int>(s_.substr(i_, k - i_));
        if (!index) fail("bit index must be an integer");
        i_ = k;
        continue;
      }
      args.push_back(expr());
    }
    if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
    ++i_;
    auto arity = [&](std::size_t n) {
      if (args.size() != n) fail(fmt::format("{} takes {} argument(s)", name, n));
    };
    if (name == "xor" || name == "and" || name == "or") {
      arity(2);
      if (name == "xor") return Expr::bxor(args[0], args[1]);
      if (name == "and") return Expr::band(args[0], args[1]);
      return Expr::bor(args[0], args[1]);
    }
    if (name == "bit") {
      arity(1);
      if (!index || *index < 0 || *index > 62) fail("bit index out of range");
      return Expr::bit(args[0], *index);
    }
    arity(1);
    if (name == "not") return Expr::lnot(args[0]);
    if (name == "pop") return Expr::popcount(args[0]);
    if (name == "halfpar") return Expr::half_parity(args[0]);
    fail(fmt::format("unknown function '{}'", name));
  }

  std::string_view s_;
  acl::Program& program_;
  std::size_t i_ = 0;
};

std::pair<std::string, std::optional<int>> object_bit(const std::string& spec) {
  const auto dot = spec.find('.');
  if (dot == std::string::npos) return {spec, std::nullopt};
  auto bit = to_int<int>(std::string_view(spec).substr(dot + 1));
  if (!bit || *bit < 0) throw ConfigError(fmt::format("bad bit index in '{}'", spec));
  return {spec.substr(0, dot), bit};
}

acl::QubitRef qubit(const std::string& spec) {
  auto [reg, off] = object_bit(spec);
  if (reg == "pool") {
    if (!off) throw ConfigError("pool qubit needs an offset, e.g. pool.0");
    return acl::QubitRef::pool_qubit(*off);
  }
  return acl::QubitRef::at(reg, off.value_or(0));
}

acl::CellName cell(const std::string& spec) {
  if (spec.rfind("attr:", 0) != 0 || spec.back() != ']') {
    throw ConfigError(fmt::format("expected attr:NAME[keys], got '{}'", spec));
  }
  const auto open = spec.find('[');
  if (open == std::string::npos || open <= 5) throw ConfigError(fmt::format("bad cell '{}'", spec));
  acl::CellName out;
  out.attr = spec.substr(5, open - 5);
  std::string_view keys(spec);
  keys = keys.substr(open + 1, keys.size() - open - 2);
  while (!keys.empty()) {
    const auto comma = keys.find(',');
    out.key.emplace_back(keys.substr(0, comma));
    if (comma == std::string_view::npos) break;
    keys.remove_prefix(comma + 1);
  }
  return out;
}

int variable(acl::Program& p, const std::string& name) {
  if (!is_ident(name)) throw ConfigError(fmt::format("bad variable name '{}'", name));
  return p.var(name);
}

void add_instruction(acl::Program& p, const Mnemonic& m) {
  const auto& a = m.args;
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (a.size() < lo || a.size() > hi) {
      throw ConfigError(lo == hi ? fmt::format("{} takes {} argument(s)", m.name, lo)
                                 : fmt::format("{} takes {} to {} arguments", m.name, lo, hi));
    }
  };
  auto right = [&](std::string fallback) { return m.right.empty() ? fallback : m.right; };
  static const std::map<std::string, quantum::GateKind> gates = {
      {"h", quantum::GateKind::kH},       {"x", quantum::GateKind::kX},
      {"y", quantum::GateKind::kY},       {"z", quantum::GateKind::kZ},
      {"s", quantum::GateKind::kS},       {"sdg", quantum::GateKind::kSdg},
      {"t", quantum::GateKind::kT},       {"id", quantum::GateKind::kIdentity},
      {"cnot", quantum::GateKind::kCnot}, {"swap", quantum::GateKind::kSwap},
      {"qft", quantum::GateKind::kQft}};

  if (auto g = gates.find(m.name); g != gates.end()) {
    if (a.empty()) throw ConfigError(fmt::format("{} needs target qubits", m.name));
    acl::ApplyGate gate;
    gate.kind = g->second;
    for (const auto& q : a) gate.targets.push_back(qubit(q));
    gate.right = m.right;
    p.add(std::move(gate));
  } else if (m.name == "write") {
    arity(2, 2);
    auto [obj, bit] = object_bit(a[0]);
    p.add(acl::WriteClassical{obj, bit, parse_expr(a[1], p), right("write")});
  } else if (m.name == "read") {
    arity(2, 2);
    auto [obj, bit] = object_bit(a[0]);
    p.add(acl::ReadClassical{obj, bit, variable(p, a[1]), right("read")});
  } else if (m.name == "sample") {
    arity(1, 3);
    acl::SampleUniform s;
    s.var = variable(p, a[0]);
    if (a.size() > 1) {
      auto bits = to_int<int>(a[1]);
      if (!bits || *bits < 1 || *bits > 62) throw ConfigError("sample width must be in [1, 62]");
      s.bits = *bits;
    }
    if (a.size() > 2) {
      auto parity = to_int<int>(a[2]);
      if (!parity || (*parity != 0 && *parity != 1)) throw ConfigError("sample parity must be 0 or 1");
      s.parity = *parity;
    }
    p.add(s);
  } else if (m.name == "samplebit") {
    arity(2, 2);
    double prob = 0.0;
    auto [ptr, ec] = std::from_chars(a[1].data(), a[1].data() + a[1].size(), prob);
    if (ec != std::errc() || ptr != a[1].data() + a[1].size() || prob < 0.0 || prob > 1.0) {
      throw ConfigError(fmt::format("bad probability '{}'", a[1]));
    }
    p.add(acl::SampleBit{variable(p, a[0]), prob});
  } else if (m.name == "let") {
    arity(2, 2);
    const int v = variable(p, a[0]);
    p.add(acl::Assign{v, parse_expr(a[1], p)});
  } else if (m.name == "measure") {
    if (a.size() < 2) throw ConfigError("measure takes a variable and at least one register");
    acl::MeasureQ mq;
    mq.var = variable(p, a[0]);
    mq.registers.assign(a.begin() + 1, a.end());
    mq.right = right("measure");
    p.add(std::move(mq));
  } else if (m.name == "flipif") {
    arity(2, 2);
    acl::FlipIf f;
    f.condition = parse_expr(a[0], p);
    f.object = a[1];
    f.right = right("flip");
    p.add(std::move(f));
  } else if (m.name == "setattr") {
    arity(2, 2);
    acl::SetAttrCell s;
    s.cell = cell(a[0]);
    if (!a[1].empty() && a[1].front() == '{') {
      if (a[1].back() != '}') throw ConfigError(fmt::format("bad right set '{}'", a[1]));
      std::vector<std::string> rights;
      std::string_view body(a[1]);
      body = body.substr(1, body.size() - 2);
      while (!body.empty()) {
        const auto comma = body.find(',');
        rights.emplace_back(body.substr(0, comma));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
      }
      s.rights = std::move(rights);
    } else {
      s.value = parse_expr(a[1], p);
    }
    s.right = right("write");
    p.add(std::move(s));
  } else if (m.name == "readattr") {
    arity(2, 2);
    acl::CellName c = cell(a[0]);
    p.add(acl::ReadAttrCell{std::move(c), variable(p, a[1]), right("read")});
  } else if (m.name == "skip" || m.name == "halt") {
    arity(0, 0);
    if (m.name == "skip") {
      p.add(acl::Skip{});
    } else {
      p.add(acl::Halt{});
    }
  } else {
    throw ConfigError(fmt::format("unknown instruction '{}'", m.name));
  }
}

// ---- document parser ----

class DocParser {
 public:
  ParseResult run(std::string_view text) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = text.find('\n', start);
      std::string_view line = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      line_ = line_no;
      try {
        parse_line(line);
      } catch (const Failure& f) {
        error(line_no, f.col, f.message, f.token);
      }
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
    finish();
    ParseResult r;
    r.diagnostics = std::move(diags_);
    if (r.diagnostics.empty()) r.document = std::move(doc_);
    return r;
  }

 private:
  void error(int line, int col, std::string message, std::string token) {
    diags_.push_back({Diagnostic::Severity::kError, line, col, std::move(message), std::move(token)});
  }

  void parse_line(std::string_view line) {
    auto tokens = lex(line);
    if (tokens.empty()) return;
    const Token key = tokens.front();
    if (key.punct) throw Failure{key.col, "expected a key", key.text};
    if (key.text == "program") {
      parse_program(line, tokens);
      return;
    }
    LineParser p(std::move(tokens), static_cast<int>(line.size()) + 1);
    p.next("key");
    if (key.text == "system") {
      doc_.system = p.name("system name").text;
    } else if (key.text == "model") {
      parse_model(p, key);
    } else if (key.text == "subjects") {
      do {
        Token t = p.name("subject name");
        declare(t);
        scope_.subjects.insert(t.text);
        doc_.subjects.push_back(t.text);
      } while (!p.done());
    } else if (key.text == "classical" || key.text == "quantum") {
      const bool q = key.text == "quantum";
      do {
        Token t = p.name("register name");
        p.expect(":");
        Token w = p.word("register width");
        auto width = to_int<int>(w.text);
        if (!width || *width < 1 || (!q && *width > 63)) {
          throw Failure{w.col, q ? "register size must be at least 1" : "classical width must be in [1, 63]", w.text};
        }
        declare(t);
        (q ? scope_.quantum : scope_.classical).insert(t.text);
        (q ? doc_.quantum : doc_.classical).push_back({t.text, *width});
      } while (!p.done());
    } else if (key.text == "guard") {
      do {
        Token t = p.name("attribute name");
        declare(t);
        scope_.guards.insert(t.text);
        doc_.guards.push_back(t.text);
      } while (!p.done());
    } else if (key.text == "grant") {
      Token s = p.name("subject");
      if (!scope_.subjects.count(s.text)) throw Failure{s.col, fmt::format("undeclared subject '{}'", s.text), s.text};
      auto [object, refs] = parse_key(p);
      if (object.kind == ObjectKey::Kind::kCell) throw Failure{refs.front().col, "cannot grant on an attribute cell", refs.front().text};
      for (const auto& r : refs) {
        if (object.kind == ObjectKey::Kind::kSet ? !scope_.quantum.count(r.text) : !scope_.object(r.text)) {
          throw Failure{r.col, fmt::format("undeclared object '{}'", r.text), r.text};
        }
      }
      doc_.grants.push_back({s.text, std::move(object), parse_rights(p)});
    } else if (key.text == "group") {
      Token r = p.name("register");
      if (!scope_.quantum.count(r.text)) throw Failure{r.col, fmt::format("undeclared quantum register '{}'", r.text), r.text};
      Token l = p.word("group label");
      auto label = to_int<int>(l.text);
      if (!label || *label < 1) throw Failure{l.col, "group label must be a positive integer", l.text};
      doc_.groups.push_back({r.text, *label});
    } else if (key.text == "entangle-allow") {
      auto [object, refs] = parse_key(p);
      if (object.kind == ObjectKey::Kind::kCell) throw Failure{refs.front().col, "expected a register or register pair", refs.front().text};
      for (const auto& r : refs) {
        if (!scope_.quantum.count(r.text)) throw Failure{r.col, fmt::format("undeclared quantum register '{}'", r.text), r.text};
      }
      Token b = p.word("true or false");
      if (b.text != "true" && b.text != "false") throw Failure{b.col, "expected true or false", b.text};
      doc_.entangle_allow.push_back({std::move(object), b.text == "true"});
    } else if (key.text == "scheduler") {
      Token kind = p.word("scheduler kind");
      SchedulerDecl d;
      if (kind.text == "script") {
        d.kind = SchedulerDecl::Kind::kScript;
        do {
          Token s = p.name("subject");
          if (!scope_.subjects.count(s.text)) throw Failure{s.col, fmt::format("undeclared subject '{}'", s.text), s.text};
          d.script.push_back(s.text);
        } while (!p.done());
      } else if (kind.text == "roundrobin") {
        d.kind = SchedulerDecl::Kind::kRoundRobin;
      } else if (kind.text == "random") {
        d.kind = SchedulerDecl::Kind::kRandom;
        d.seed = p.integer<std::uint64_t>("scheduler seed");
      } else {
        throw Failure{kind.col, "unknown scheduler (script, roundrobin, random)", kind.text};
      }
      once(doc_.scheduler.has_value(), key);
      doc_.scheduler = std::move(d);
    } else if (key.text == "seed") {
      once(doc_.seed.has_value(), key);
      doc_.seed = p.integer<std::uint64_t>("seed");
    } else if (key.text == "trials") {
      once(doc_.trials.has_value(), key);
      Token t = p.word("trial count");
      auto n = to_int<int>(t.text);
      if (!n || *n < 1) throw Failure{t.col, "trials must be a positive integer", t.text};
      doc_.trials = *n;
    } else {
      throw Failure{key.col, fmt::format("unknown key '{}'", key.text), key.text};
    }
    p.finish();
  }

  void once(bool seen, const Token& key) {
    if (seen) throw Failure{key.col, fmt::format("duplicate '{}' line", key.text), key.text};
  }

  void declare(const Token& t) {
    if (scope_.any(t.text)) throw Failure{t.col, fmt::format("'{}' is already declared", t.text), t.text};
  }

  void parse_model(LineParser& p, const Token& key) {
    if (model_line_ != 0) throw Failure{key.col, "duplicate 'model' line", key.text};
    Token kind = p.word("model id");
    std::string id = kind.text;
    Token param = kind;
    if (kind.text == "subsys" || kind.text == "grp") {
      if (p.peek_is(":")) p.expect(":");
      param = p.word("k=<int>");
      if (param.text.rfind("k=", 0) != 0) throw Failure{param.col, "expected k=<int>", param.text};
      id += ":" + param.text;
    }
    policy::ModelSpec spec;
    try {
      spec = policy::ModelSpec::parse(id);
    } catch (const ConfigError& e) {
      throw Failure{param.col, e.what(), param.text};
    }
    doc_.model = spec.id();
    model_line_ = line_;
    model_param_ = param;
    model_spec_ = spec;
  }

  void parse_program(std::string_view line, const std::vector<Token>& tokens) {
    if (tokens.size() < 2 || tokens[1].punct) {
      throw Failure{tokens.size() < 2 ? static_cast<int>(line.size()) + 1 : tokens[1].col, "expected subject name",
                    tokens.size() < 2 ? "" : tokens[1].text};
    }
    const Token& s = tokens[1];
    if (!scope_.subjects.count(s.text)) throw Failure{s.col, fmt::format("undeclared subject '{}'", s.text), s.text};
    if (tokens.size() < 3 || tokens[2].text != ":") {
      throw Failure{tokens.size() < 3 ? static_cast<int>(line.size()) + 1 : tokens[2].col, "expected ':'",
                    tokens.size() < 3 ? "" : tokens[2].text};
    }
    for (const auto& b : doc_.programs) {
      if (b.subject == s.text) throw Failure{s.col, fmt::format("duplicate program for '{}'", s.text), s.text};
    }
    ProgramBlock block;
    block.subject = s.text;
    acl::Program scratch;
    for (auto& at : lex_mnemonics(line, static_cast<std::size_t>(tokens[2].col))) {
      for (const auto& obj : referenced_objects(at.m)) {
        if (!scope_.object(obj)) throw Failure{at.col, fmt::format("undeclared object '{}'", obj), obj};
      }
      try {
        add_instruction(scratch, at.m);
      } catch (const ConfigError& e) {
        throw Failure{at.col, e.what(), at.m.name};
      }
      block.code.push_back(std::move(at.m));
    }
    doc_.programs.push_back(std::move(block));
  }

  void finish() {
    if (model_line_ == 0) {
      error(1, 1, "missing 'model' line", "");
      return;
    }
    const int nq = static_cast<int>(doc_.quantum.size());
    if (model_spec_.kind == policy::ModelKind::kSubsys && (model_spec_.k < 1 || model_spec_.k > nq)) {
      error(model_line_, model_param_.col,
            fmt::format("k out of range [1, N_q] (k={}, N_q={})", model_spec_.k, nq), model_param_.text);
    }
    if (model_spec_.kind == policy::ModelKind::kGrp && model_spec_.k < 1) {
      error(model_line_, model_param_.col, fmt::format("k must be at least 1 (k={})", model_spec_.k),
            model_param_.text);
    }
  }

  Document doc_;
  Scope scope_;
  std::vector<Diagnostic> diags_;
  int line_ = 0;
  int model_line_ = 0;
  Token model_param_;
  policy::ModelSpec model_spec_;
};

}  // namespace

std::string Diagnostic::text() const {
  std::string out = fmt::format("{}:{}: {}: {}", line, column,
                                severity == Severity::kError ? "error" : "warning", message);
  if (!token.empty()) out += fmt::format(" [token '{}']", token);
  return out;
}

ParseResult parse_config(std::string_view text) { return DocParser().run(text); }

acl::Expr parse_expr(std::string_view text, acl::Program& program) {
  return ExprParser(text, program).parse();
}

acl::Program build_program(const std::vector<Mnemonic>& code) {
  acl::Program p;
  for (const auto& m : code) {
    try {
      add_instruction(p, m);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}: {}", m.name, e.what()));
    }
  }
  return p;
}

std::string render(const Document& doc) {
  std::string out;
  auto line = [&out](const std::string& s) {
    out += s;
    out += '\n';
  };
  auto regs = [](const std::vector<acl::RegisterDecl>& rs) {
    std::vector<std::string> parts;
    for (const auto& r : rs) parts.push_back(fmt::format("{}:{}", r.name, r.size));
    return fmt::format("{}", fmt::join(parts, " "));
  };
  line("system " + doc.system);
  line("model " + doc.model);
  if (!doc.subjects.empty()) line(fmt::format("subjects {}", fmt::join(doc.subjects, " ")));
  if (!doc.classical.empty()) line("classical " + regs(doc.classical));
  if (!doc.quantum.empty()) line("quantum " + regs(doc.quantum));
  if (!doc.guards.empty()) line(fmt::format("guard {}", fmt::join(doc.guards, " ")));
  for (const auto& g : doc.grants) {
    line(fmt::format("grant {} {} {}", g.subject, render_key(g.object), fmt::join(g.rights, ",")));
  }
  for (const auto& [reg, label] : doc.groups) line(fmt::format("group {} {}", reg, label));
  for (const auto& f : doc.entangle_allow) {
    line(fmt::format("entangle-allow {} {}", render_key(f.object), f.value ? "true" : "false"));
  }
  for (const auto& b : doc.programs) {
    std::string text = fmt::format("program {} :", b.subject);
    for (const auto& m : b.code) {
      text += " " + m.name;
      if (!m.args.empty()) text += fmt::format("({})", fmt::join(m.args, ","));
      if (!m.right.empty()) text += "@" + m.right;
    }
    line(text);
  }
  if (doc.scheduler) {
    switch (doc.scheduler->kind) {
      case SchedulerDecl::Kind::kScript:
        line(fmt::format("scheduler script {}", fmt::join(doc.scheduler->script, " ")));
        break;
      case SchedulerDecl::Kind::kRoundRobin:
        line("scheduler roundrobin");
        break;
      case SchedulerDecl::Kind::kRandom:
        line(fmt::format("scheduler random {}", doc.scheduler->seed));
        break;
    }
  }
  if (doc.seed) line(fmt::format("seed {}", *doc.seed));
  if (doc.trials) line(fmt::format("trials {}", *doc.trials));
  return out;
}

Loaded load(const Document& doc) {
  Loaded out;
  out.config.name = doc.system;
  out.config.model = policy::ModelSpec::parse(doc.model);
  out.config.subjects = doc.subjects;
  out.config.classical = doc.classical;
  out.config.quantum = doc.quantum;
  out.config.guards = doc.guards;
  out.config.grants = doc.grants;
  out.config.groups = doc.groups;
  out.config.entangle_allow = doc.entangle_allow;
  for (const auto& b : doc.programs) out.programs[b.subject] = build_program(b.code);
  // Rights a program asks for are part of the universe even when nobody holds
  // them; such requests are simply denied.
  std::vector<std::string> rights;
  const auto add = [&rights](const std::string& r) {
    if (!r.empty() && std::find(rights.begin(), rights.end(), r) == rights.end()) rights.push_back(r);
  };
  for (const auto& g : doc.grants) {
    for (const auto& r : g.rights) add(r);
  }
  for (const auto& [subject, program] : out.programs) {
    for (const auto& ins : program.code) {
      std::visit(
          [&add](const auto& i) {
            using T = std::decay_t<decltype(i)>;
            if constexpr (std::is_same_v<T, acl::ApplyGate>) {
              if (i.right.empty()) {
                std::vector<int> slots(i.targets.size());
                for (std::size_t k = 0; k < slots.size(); ++k) slots[k] = static_cast<int>(k);
                add(quantum::default_gate_right({i.kind, slots}));
              }
            }
            if constexpr (std::is_same_v<T, acl::FlipIf>) {
              if (i.identity_register) add(i.identity_right);
            }
            if constexpr (requires { i.right; }) add(i.right);
            if constexpr (requires { i.rights; }) {
              if (i.rights) {
                for (const auto& r : *i.rights) add(r);
              }
            }
          },
          ins);
    }
  }
  out.config.rights = std::move(rights);
  if (doc.scheduler) {
    switch (doc.scheduler->kind) {
      case SchedulerDecl::Kind::kScript:
        out.scheduler = acl::SchedulerSpec::scripted(doc.scheduler->script);
        break;
      case SchedulerDecl::Kind::kRoundRobin:
        out.scheduler = acl::SchedulerSpec::round_robin();
        break;
      case SchedulerDecl::Kind::kRandom:
        out.scheduler = acl::SchedulerSpec::seeded_random(doc.scheduler->seed);
        break;
    }
  } else {
    out.scheduler = acl::SchedulerSpec::round_robin();
  }
  out.seed = doc.seed.value_or(0);
  out.trials = doc.trials.value_or(1);
  return out;
}

}  // namespace qacl::cli
