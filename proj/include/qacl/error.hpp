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

#ifndef QACL_ERROR_HPP_
#define QACL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qacl {

// Base class for all library errors. Each subclass maps to one error kind
// surfaced by the command line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A resource limit (qubit count, table size, brute-force budget) would be
// exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class GateError : public Error {
 public:
  using Error::Error;
};

// Operation requires a state the simulator is not in.
class StateError : public Error {
 public:
  using Error::Error;
};

class InvariantError : public Error {
 public:
  using Error::Error;
};

// Malformed request: undeclared subject, object, or right. For equivalence
// checking this marks an execution as ungenerable.
class RequestError : public Error {
 public:
  using Error::Error;
};

// An authorized request could not be carried out (bad offset, pool misuse).
class EffectError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qacl

#endif  // QACL_ERROR_HPP_
