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

#include "qacl/acl/expr.hpp"

#include <algorithm>
#include <bit>

#include <fmt/format.h>

#include "qacl/error.hpp"

namespace qacl::acl {
namespace {

const char* op_name(ExprOp op) {
  switch (op) {
    case ExprOp::kXor: return "xor";
    case ExprOp::kAnd: return "and";
    case ExprOp::kOr: return "or";
    case ExprOp::kNot: return "not";
    case ExprOp::kBit: return "bit";
    case ExprOp::kPopcount: return "pop";
    case ExprOp::kHalfParity: return "halfpar";
    default: return "";
  }
}

}  // namespace

Expr Expr::constant(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::kConst;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::var(int index) {
  if (index < 0) throw ConfigError("negative variable index");
  auto n = std::make_shared<Node>();
  n->op = ExprOp::kVar;
  n->var = index;
  return Expr(std::move(n));
}

#define QACL_BINARY(NAME, OP)                  \
  Expr Expr::NAME(Expr a, Expr b) {            \
    auto n = std::make_shared<Node>();         \
    n->op = OP;                                \
    n->a = std::move(a.node_);                 \
    n->b = std::move(b.node_);                 \
    return Expr(std::move(n));                 \
  }
QACL_BINARY(bxor, ExprOp::kXor)
QACL_BINARY(band, ExprOp::kAnd)
QACL_BINARY(bor, ExprOp::kOr)
#undef QACL_BINARY

Expr Expr::lnot(Expr a) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::kNot;
  n->a = std::move(a.node_);
  return Expr(std::move(n));
}

Expr Expr::bit(Expr a, int index) {
  if (index < 0 || index > 62) throw ConfigError("bit index out of range");
  auto n = std::make_shared<Node>();
  n->op = ExprOp::kBit;
  n->value = index;
  n->a = std::move(a.node_);
  return Expr(std::move(n));
}

Expr Expr::popcount(Expr a) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::kPopcount;
  n->a = std::move(a.node_);
  return Expr(std::move(n));
}

Expr Expr::half_parity(Expr a) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::kHalfParity;
  n->a = std::move(a.node_);
  return Expr(std::move(n));
}

std::int64_t Expr::eval(std::span<const std::int64_t> locals) const {
  const Node& n = *node_;
  auto sub = [&](const std::shared_ptr<const Node>& p) { return Expr(p).eval(locals); };
  switch (n.op) {
    case ExprOp::kConst: return n.value;
    case ExprOp::kVar:
      if (static_cast<std::size_t>(n.var) >= locals.size()) {
        throw EffectError(fmt::format("variable slot {} not allocated", n.var));
      }
      return locals[static_cast<std::size_t>(n.var)];
    case ExprOp::kXor: return sub(n.a) ^ sub(n.b);
    case ExprOp::kAnd: return sub(n.a) & sub(n.b);
    case ExprOp::kOr: return sub(n.a) | sub(n.b);
    case ExprOp::kNot: return sub(n.a) == 0 ? 1 : 0;
    case ExprOp::kBit: return (sub(n.a) >> n.value) & 1;
    case ExprOp::kPopcount:
      return std::popcount(static_cast<std::uint64_t>(sub(n.a)));
    case ExprOp::kHalfParity:
      return (std::popcount(static_cast<std::uint64_t>(sub(n.a))) / 2) % 2;
  }
  return 0;
}

int Expr::max_var() const {
  const Node& n = *node_;
  int m = n.op == ExprOp::kVar ? n.var : -1;
  if (n.a) m = std::max(m, Expr(n.a).max_var());
  if (n.b) m = std::max(m, Expr(n.b).max_var());
  return m;
}

std::string Expr::render(const std::vector<std::string>& var_names) const {
  const Node& n = *node_;
  switch (n.op) {
    case ExprOp::kConst: return std::to_string(n.value);
    case ExprOp::kVar:
      if (static_cast<std::size_t>(n.var) < var_names.size()) {
        return var_names[static_cast<std::size_t>(n.var)];
      }
      return fmt::format("${}", n.var);
    case ExprOp::kXor:
    case ExprOp::kAnd:
    case ExprOp::kOr:
      return fmt::format("{}({},{})", op_name(n.op), Expr(n.a).render(var_names),
                         Expr(n.b).render(var_names));
    case ExprOp::kBit:
      return fmt::format("bit({},{})", Expr(n.a).render(var_names), n.value);
    default:
      return fmt::format("{}({})", op_name(n.op), Expr(n.a).render(var_names));
  }
}

bool Expr::equal(const Node* x, const Node* y) {
  if (x == y) return true;
  if (!x || !y) return false;
  return x->op == y->op && x->value == y->value && x->var == y->var &&
         equal(x->a.get(), y->a.get()) && equal(x->b.get(), y->b.get());
}

bool operator==(const Expr& a, const Expr& b) {
  return Expr::equal(a.node_.get(), b.node_.get());
}

}  // namespace qacl::acl
