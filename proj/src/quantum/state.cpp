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

#include "qacl/quantum/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qacl/error.hpp"

namespace qacl::quantum {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Inserts a zero bit at position `bit` of x.
inline std::uint64_t insert_zero(std::uint64_t x, int bit) {
  const std::uint64_t low = x & ((std::uint64_t{1} << bit) - 1);
  return ((x >> bit) << (bit + 1)) | low;
}

template <typename F>
void for_each_pair(std::vector<Amplitude>& a, int q, F&& f) {
  const std::uint64_t half = a.size() >> 1;
  const std::uint64_t mask = std::uint64_t{1} << q;
  for (std::uint64_t k = 0; k < half; ++k) {
    const std::uint64_t i0 = insert_zero(k, q);
    f(a[i0], a[i0 | mask]);
  }
}

void apply_single(std::vector<Amplitude>& a, int q, Amplitude m00,
                  Amplitude m01, Amplitude m10, Amplitude m11) {
  for_each_pair(a, q, [&](Amplitude& x0, Amplitude& x1) {
    const Amplitude y0 = m00 * x0 + m01 * x1;
    const Amplitude y1 = m10 * x0 + m11 * x1;
    x0 = y0;
    x1 = y1;
  });
}

void apply_phase(std::vector<Amplitude>& a, int q, Amplitude phase) {
  const std::uint64_t mask = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    if (i & mask) a[i] *= phase;
  }
}

std::uint64_t gather_bits(std::uint64_t index, std::span<const int> targets) {
  std::uint64_t out = 0;
  for (std::size_t m = 0; m < targets.size(); ++m) {
    out |= ((index >> targets[m]) & 1ULL) << m;
  }
  return out;
}

std::uint64_t scatter_bits(std::uint64_t value, std::span<const int> targets) {
  std::uint64_t out = 0;
  for (std::size_t m = 0; m < targets.size(); ++m) {
    out |= ((value >> m) & 1ULL) << targets[m];
  }
  return out;
}

std::uint64_t target_mask(std::span<const int> targets) {
  std::uint64_t mask = 0;
  for (int t : targets) mask |= std::uint64_t{1} << t;
  return mask;
}

void check_targets(std::span<const int> targets, int num_qubits) {
  std::uint64_t seen = 0;
  for (int t : targets) {
    if (t < 0 || t >= num_qubits) {
      throw GateError(fmt::format("qubit {} out of range [0, {})", t, num_qubits));
    }
    if (seen & (std::uint64_t{1} << t)) {
      throw GateError(fmt::format("duplicate target qubit {}", t));
    }
    seen |= std::uint64_t{1} << t;
  }
}

void apply_fourier(std::vector<Amplitude>& a, std::span<const int> targets,
                   bool inverse) {
  const std::size_t k = targets.size();
  const std::uint64_t block = std::uint64_t{1} << k;
  const std::uint64_t tmask = target_mask(targets);
  std::vector<std::uint64_t> offsets(block);
  for (std::uint64_t v = 0; v < block; ++v) offsets[v] = scatter_bits(v, targets);
  std::vector<Amplitude> roots(block);
  const double sign = inverse ? -1.0 : 1.0;
  for (std::uint64_t v = 0; v < block; ++v) {
    const double angle = sign * 2.0 * std::numbers::pi *
                         static_cast<double>(v) / static_cast<double>(block);
    roots[v] = Amplitude(std::cos(angle), std::sin(angle));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(block));
  std::vector<Amplitude> in(block), out(block);
  for (std::uint64_t base = 0; base < a.size(); ++base) {
    if (base & tmask) continue;
    for (std::uint64_t v = 0; v < block; ++v) in[v] = a[base | offsets[v]];
    for (std::uint64_t y = 0; y < block; ++y) {
      Amplitude acc(0.0, 0.0);
      for (std::uint64_t x = 0; x < block; ++x) {
        acc += roots[(x * y) & (block - 1)] * in[x];
      }
      out[y] = acc * scale;
    }
    for (std::uint64_t v = 0; v < block; ++v) a[base | offsets[v]] = out[v];
  }
}

}  // namespace

StateVector StateVector::zero(int num_qubits, int cap) {
  if (num_qubits < 0) throw StateError("negative qubit count");
  if (num_qubits > cap) {
    throw CapacityError(
        fmt::format("{} qubits exceeds capacity of {}", num_qubits, cap));
  }
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits, Amplitude(0.0, 0.0));
  amps[0] = Amplitude(1.0, 0.0);
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps) {
  const std::size_t size = amps.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw StateError("amplitude count must be a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if (n > kDefaultQubitCap) throw CapacityError("state too large");
  StateVector s(n, std::move(amps));
  if (std::abs(s.norm_squared() - 1.0) > 1e-9) {
    throw StateError("amplitudes are not normalized");
  }
  return s;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Amplitude& a : amps_) total += std::norm(a);
  return total;
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH: return "H";
    case GateKind::kX: return "X";
    case GateKind::kY: return "Y";
    case GateKind::kZ: return "Z";
    case GateKind::kS: return "S";
    case GateKind::kSdg: return "Sdg";
    case GateKind::kT: return "T";
    case GateKind::kCnot: return "CNOT";
    case GateKind::kSwap: return "SWAP";
    case GateKind::kQft: return "QFT";
    case GateKind::kIdentity: return "IDENTITY";
  }
  return "?";
}

std::optional<GateKind> parse_gate_name(std::string_view name) {
  static constexpr GateKind kAll[] = {
      GateKind::kH,    GateKind::kX,    GateKind::kY,   GateKind::kZ,
      GateKind::kS,    GateKind::kSdg,  GateKind::kT,   GateKind::kCnot,
      GateKind::kSwap, GateKind::kQft,  GateKind::kIdentity};
  for (GateKind k : kAll) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

std::string default_gate_right(const GateSpec& gate) {
  if (gate.kind == GateKind::kQft) {
    return fmt::format("QFT({})", gate.targets.size());
  }
  return std::string(gate_name(gate.kind));
}

void validate_gate(const GateSpec& gate, int num_qubits) {
  const std::size_t arity = gate.targets.size();
  switch (gate.kind) {
    case GateKind::kCnot:
    case GateKind::kSwap:
      if (arity != 2) {
        throw GateError(fmt::format("{} takes 2 targets, got {}",
                                    gate_name(gate.kind), arity));
      }
      break;
    case GateKind::kQft:
    case GateKind::kIdentity:
      if (arity == 0) {
        throw GateError(fmt::format("{} needs at least one target",
                                    gate_name(gate.kind)));
      }
      break;
    default:
      if (arity != 1) {
        throw GateError(fmt::format("{} takes 1 target, got {}",
                                    gate_name(gate.kind), arity));
      }
  }
  check_targets(gate.targets, num_qubits);
}

StateVector apply_gate(StateVector state, const GateSpec& gate) {
  validate_gate(gate, state.num_qubits());
  auto& a = state.mutable_amplitudes();
  const int q = gate.targets[0];
  const Amplitude one(1.0, 0.0), zero(0.0, 0.0), i(0.0, 1.0);
  switch (gate.kind) {
    case GateKind::kH:
      for_each_pair(a, q, [](Amplitude& x0, Amplitude& x1) {
        const Amplitude s = (x0 + x1) * kInvSqrt2;
        const Amplitude d = (x0 - x1) * kInvSqrt2;
        x0 = s;
        x1 = d;
      });
      break;
    case GateKind::kX:
      for_each_pair(a, q, [](Amplitude& x0, Amplitude& x1) { std::swap(x0, x1); });
      break;
    case GateKind::kY:
      apply_single(a, q, zero, -i, i, zero);
      break;
    case GateKind::kZ:
      apply_phase(a, q, -one);
      break;
    case GateKind::kS:
      apply_phase(a, q, i);
      break;
    case GateKind::kSdg:
      apply_phase(a, q, -i);
      break;
    case GateKind::kT:
      apply_phase(a, q, Amplitude(kInvSqrt2, -kInvSqrt2));
      break;
    case GateKind::kCnot: {
      const std::uint64_t c = std::uint64_t{1} << gate.targets[0];
      const std::uint64_t t = std::uint64_t{1} << gate.targets[1];
      for (std::uint64_t x = 0; x < a.size(); ++x) {
        if ((x & c) && !(x & t)) std::swap(a[x], a[x | t]);
      }
      break;
    }
    case GateKind::kSwap: {
      const std::uint64_t m0 = std::uint64_t{1} << gate.targets[0];
      const std::uint64_t m1 = std::uint64_t{1} << gate.targets[1];
      for (std::uint64_t x = 0; x < a.size(); ++x) {
        if ((x & m0) && !(x & m1)) std::swap(a[x], a[(x & ~m0) | m1]);
      }
      break;
    }
    case GateKind::kQft:
      apply_fourier(a, gate.targets, false);
      break;
    case GateKind::kIdentity:
      break;
  }
  return state;
}

StateVector apply_inverse_qft(StateVector state, std::span<const int> targets) {
  if (targets.empty()) throw GateError("QFT needs at least one target");
  check_targets(targets, state.num_qubits());
  apply_fourier(state.mutable_amplitudes(), targets, true);
  return state;
}

std::vector<double> outcome_probabilities(const StateVector& state,
                                          std::span<const int> targets) {
  check_targets(targets, state.num_qubits());
  std::vector<double> probs(std::size_t{1} << targets.size(), 0.0);
  const auto& a = state.amplitudes();
  if (targets.size() == 1) {
    const std::uint64_t mask = std::uint64_t{1} << targets[0];
    for (std::uint64_t x = 0; x < a.size(); ++x) {
      probs[(x & mask) ? 1 : 0] += std::norm(a[x]);
    }
    return probs;
  }
  for (std::uint64_t x = 0; x < a.size(); ++x) {
    probs[gather_bits(x, targets)] += std::norm(a[x]);
  }
  return probs;
}

std::string MeasurementRecord::bitstring() const {
  std::string s;
  s.reserve(targets.size());
  for (std::size_t m = 0; m < targets.size(); ++m) {
    s.push_back(((outcome >> m) & 1ULL) ? '1' : '0');
  }
  return s;
}

StateVector project(StateVector state, std::span<const int> targets,
                    std::uint64_t outcome) {
  check_targets(targets, state.num_qubits());
  const std::uint64_t tmask = target_mask(targets);
  const std::uint64_t want = scatter_bits(outcome, targets);
  auto& a = state.mutable_amplitudes();
  double p = 0.0;
  for (std::uint64_t x = 0; x < a.size(); ++x) {
    if ((x & tmask) == want) p += std::norm(a[x]);
  }
  if (p <= 0.0) throw StateError("projection onto a zero-probability outcome");
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t x = 0; x < a.size(); ++x) {
    if ((x & tmask) == want) {
      a[x] *= scale;
    } else {
      a[x] = Amplitude(0.0, 0.0);
    }
  }
  return state;
}

std::pair<MeasurementRecord, StateVector> measure_complete(
    StateVector state, std::span<const int> targets, Rng& rng) {
  if (targets.empty()) throw GateError("measurement needs at least one target");
  const std::vector<double> probs = outcome_probabilities(state, targets);
  double total = 0.0;
  for (double p : probs) total += p;
  const double r = rng.uniform() * total;
  std::uint64_t outcome = 0;
  double acc = 0.0;
  std::uint64_t last_nonzero = 0;
  bool chosen = false;
  for (std::uint64_t v = 0; v < probs.size(); ++v) {
    if (probs[v] <= 0.0) continue;
    last_nonzero = v;
    acc += probs[v];
    if (r < acc) {
      outcome = v;
      chosen = true;
      break;
    }
  }
  if (!chosen) outcome = last_nonzero;
  MeasurementRecord record{std::vector<int>(targets.begin(), targets.end()),
                           outcome, probs[outcome] / total};
  StateVector post = project(std::move(state), targets, outcome);
  return {std::move(record), std::move(post)};
}

StateVector prepare_ghz(StateVector state, std::span<const int> targets) {
  if (targets.empty()) throw GateError("GHZ needs at least one target");
  const std::vector<double> probs = outcome_probabilities(state, targets);
  if (std::abs(probs[0] - 1.0) > 1e-10) {
    throw StateError("GHZ targets are not in |0...0>");
  }
  state = apply_gate(std::move(state), GateSpec{GateKind::kH, {targets[0]}});
  for (std::size_t m = 1; m < targets.size(); ++m) {
    state = apply_gate(std::move(state),
                       GateSpec{GateKind::kCnot, {targets[m - 1], targets[m]}});
  }
  return state;
}

Amplitude DensityMatrix::trace() const {
  Amplitude t(0.0, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

bool DensityMatrix::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    }
  }
  return true;
}

DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep) {
  check_targets(keep, state.num_qubits());
  if (keep.size() > 12) throw CapacityError("partial trace keeps too many qubits");
  const std::uint64_t kmask = target_mask(keep);
  const std::uint64_t dim = std::uint64_t{1} << keep.size();
  std::vector<std::uint64_t> offsets(dim);
  for (std::uint64_t v = 0; v < dim; ++v) offsets[v] = scatter_bits(v, keep);
  DensityMatrix rho(dim);
  const auto& a = state.amplitudes();
  for (std::uint64_t env = 0; env < a.size(); ++env) {
    if (env & kmask) continue;
    for (std::uint64_t r = 0; r < dim; ++r) {
      const Amplitude ar = a[env | offsets[r]];
      if (ar == Amplitude(0.0, 0.0)) continue;
      for (std::uint64_t c = 0; c < dim; ++c) {
        rho.at(r, c) += ar * std::conj(a[env | offsets[c]]);
      }
    }
  }
  return rho;
}

double purity(const DensityMatrix& rho) {
  double p = 0.0;
  for (std::size_t r = 0; r < rho.dimension(); ++r) {
    for (std::size_t c = 0; c < rho.dimension(); ++c) p += std::norm(rho.at(r, c));
  }
  return p;
}

bool is_product(const StateVector& state, std::span<const int> subset,
                double tol) {
  check_targets(subset, state.num_qubits());
  const int n = state.num_qubits();
  if (subset.empty() || static_cast<int>(subset.size()) == n) return true;
  std::vector<int> side(subset.begin(), subset.end());
  if (2 * static_cast<int>(side.size()) > n) {
    std::vector<int> rest;
    for (int q = 0; q < n; ++q) {
      if (std::find(side.begin(), side.end(), q) == side.end()) rest.push_back(q);
    }
    side = std::move(rest);
  }
  return std::abs(1.0 - purity(partial_trace(state, side))) <= tol;
}

std::string dump(const StateVector& state) {
  std::string out;
  const int n = state.num_qubits();
  const auto& a = state.amplitudes();
  for (std::uint64_t x = 0; x < a.size(); ++x) {
    if (std::abs(a[x]) <= 1e-12) continue;
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q) {
      if ((x >> q) & 1ULL) bits[static_cast<std::size_t>(n - 1 - q)] = '1';
    }
    // Normalize negative zero so dumps are byte-stable.
    const double re = a[x].real() == 0.0 ? 0.0 : a[x].real();
    const double im = a[x].imag() == 0.0 ? 0.0 : a[x].imag();
    out += fmt::format("{} {} {:.12f} {:.12f}\n", x, bits, re, im);
  }
  return out;
}

}  // namespace qacl::quantum
