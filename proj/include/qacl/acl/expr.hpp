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

#ifndef QACL_ACL_EXPR_HPP_
#define QACL_ACL_EXPR_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qacl::acl {

enum class ExprOp {
  kConst,
  kVar,
  kXor,
  kAnd,
  kOr,
  kNot,         // logical: 1 if operand is zero, else 0
  kBit,         // bit i of operand
  kPopcount,
  kHalfParity,  // (popcount / 2) mod 2
};

// Immutable expression over a subject's local variables. Variables are
// indices into the owning program's variable table, so an expression can only
// ever read its own subject's locals.
class Expr {
 public:
  Expr() : Expr(constant(0)) {}

  static Expr constant(std::int64_t value);
  static Expr var(int index);
  static Expr bxor(Expr a, Expr b);
  static Expr band(Expr a, Expr b);
  static Expr bor(Expr a, Expr b);
  static Expr lnot(Expr a);
  static Expr bit(Expr a, int index);
  static Expr popcount(Expr a);
  static Expr half_parity(Expr a);

  ExprOp op() const { return node_->op; }
  std::int64_t value() const { return node_->value; }
  int var_index() const { return node_->var; }

  std::int64_t eval(std::span<const std::int64_t> locals) const;
  // Highest variable index referenced, or -1.
  int max_var() const;
  // Text form used by the configuration language, e.g. `xor(a,bit(x,2))`.
  std::string render(const std::vector<std::string>& var_names) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    ExprOp op = ExprOp::kConst;
    std::int64_t value = 0;
    int var = -1;
    std::shared_ptr<const Node> a, b;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool equal(const Node* x, const Node* y);

  std::shared_ptr<const Node> node_;
};

}  // namespace qacl::acl

#endif  // QACL_ACL_EXPR_HPP_
