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

#ifndef QACL_ACL_REQUEST_HPP_
#define QACL_ACL_REQUEST_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qacl::acl {

// Bit i set means declared right i is granted.
using RightSet = std::uint64_t;

inline bool right_in(RightSet set, int right, int all_right) {
  return ((set >> right) & 1ULL) != 0 ||
         (all_right >= 0 && ((set >> all_right) & 1ULL) != 0);
}

// Object of a request, resolved against a compiled System.
struct ObjectRef {
  enum class Kind { kClassical, kQuantum, kCell };

  Kind kind = Kind::kClassical;
  int index = -1;          // classical object or attribute cell
  std::vector<int> regs;   // quantum registers, ascending
  std::uint64_t mask = 0;  // quantum registers as a bit set

  static ObjectRef classical(int c) { return {Kind::kClassical, c, {}, 0}; }
  static ObjectRef cell(int cell) { return {Kind::kCell, cell, {}, 0}; }
  static ObjectRef quantum(std::vector<int> regs);

  // Request length x: number of registers for subsystems, 1 otherwise.
  std::size_t length() const {
    return kind == Kind::kQuantum ? regs.size() : 1;
  }

  friend bool operator==(const ObjectRef& a, const ObjectRef& b) {
    return a.kind == b.kind && a.index == b.index && a.regs == b.regs;
  }
};

struct Request {
  int subject = -1;
  ObjectRef object;
  int right = -1;

  friend bool operator==(const Request&, const Request&) = default;
};

struct HistoryEntry {
  std::size_t step = 0;
  Request request;
  bool authorized = false;
};

using History = std::vector<HistoryEntry>;

}  // namespace qacl::acl

#endif  // QACL_ACL_REQUEST_HPP_
