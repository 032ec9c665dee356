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

#ifndef QACL_QUANTUM_STATE_HPP_
#define QACL_QUANTUM_STATE_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qacl/rng.hpp"

namespace qacl::quantum {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultQubitCap = 20;

// Pure state over n qubits, little-endian: qubit 0 is the least significant
// bit of the basis index.
class StateVector {
 public:
  // |0...0> over num_qubits qubits. Throws CapacityError above cap.
  static StateVector zero(int num_qubits, int cap = kDefaultQubitCap);
  // Takes ownership of explicit amplitudes; size must be a power of two and
  // the vector must be normalized within 1e-9.
  static StateVector from_amplitudes(std::vector<Amplitude> amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  std::vector<Amplitude>& mutable_amplitudes() { return amps_; }
  Amplitude amplitude(std::uint64_t index) const { return amps_[index]; }
  double norm_squared() const;

 private:
  StateVector(int n, std::vector<Amplitude> amps)
      : num_qubits_(n), amps_(std::move(amps)) {}

  int num_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

enum class GateKind { kH, kX, kY, kZ, kS, kSdg, kT, kCnot, kSwap, kQft, kIdentity };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_name(std::string_view name);

// For CNOT targets are {control, target}. For QFT the k targets form a k-bit
// integer with targets[0] as its least significant bit. IDENTITY accepts any
// non-empty target list.
struct GateSpec {
  GateKind kind = GateKind::kIdentity;
  std::vector<int> targets;
};

// Right label conventionally associated with a gate: the gate name, or
// "QFT(k)" for a k-qubit Fourier transform.
std::string default_gate_right(const GateSpec& gate);

// Throws GateError on bad arity, duplicate or out-of-range targets.
void validate_gate(const GateSpec& gate, int num_qubits);

StateVector apply_gate(StateVector state, const GateSpec& gate);
// Inverse Fourier transform over the same target convention as kQft.
StateVector apply_inverse_qft(StateVector state, std::span<const int> targets);

// Born probabilities of every outcome on `targets`. Outcome bit m is the value
// of targets[m].
std::vector<double> outcome_probabilities(const StateVector& state,
                                          std::span<const int> targets);

struct MeasurementRecord {
  std::vector<int> targets;
  std::uint64_t outcome = 0;
  double probability = 0.0;

  // Character m is the measured value of targets[m].
  std::string bitstring() const;
};

// Complete projective measurement of `targets` in the computational basis.
std::pair<MeasurementRecord, StateVector> measure_complete(
    StateVector state, std::span<const int> targets, Rng& rng);

// Collapse onto a known outcome (probability must be non-zero).
StateVector project(StateVector state, std::span<const int> targets,
                    std::uint64_t outcome);

// H on targets[0] then a CNOT chain. Targets must be in |0...0> (1e-10).
StateVector prepare_ghz(StateVector state, std::span<const int> targets);

class DensityMatrix {
 public:
  explicit DensityMatrix(std::size_t dim)
      : dim_(dim), entries_(dim * dim, Amplitude(0.0, 0.0)) {}

  std::size_t dimension() const { return dim_; }
  Amplitude& at(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  Amplitude at(std::size_t r, std::size_t c) const {
    return entries_[r * dim_ + c];
  }
  Amplitude trace() const;
  bool is_hermitian(double tol) const;

 private:
  std::size_t dim_;
  std::vector<Amplitude> entries_;
};

// Reduced state on `keep`; basis bit m of the result is qubit keep[m].
DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep);
double purity(const DensityMatrix& rho);
// True iff the state factors across `subset` and its complement, judged by
// purity of the smaller side.
bool is_product(const StateVector& state, std::span<const int> subset,
                double tol = 1e-9);

// One line per amplitude with modulus above 1e-12:
// `index bitstring re im`, bitstring written from qubit n-1 down to qubit 0.
std::string dump(const StateVector& state);

}  // namespace qacl::quantum

#endif  // QACL_QUANTUM_STATE_HPP_
