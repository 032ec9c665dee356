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

#include "qacl/acl/engine.hpp"

#include <algorithm>
#include <bit>

#include <fmt/format.h>

#include "qacl/error.hpp"

namespace qacl::acl {

int Program::var(std::string_view name) {
  const int found = find_var(name);
  if (found >= 0) return found;
  vars.emplace_back(name);
  return static_cast<int>(vars.size()) - 1;
}

int Program::find_var(std::string_view name) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == name) return static_cast<int>(i);
  }
  return -1;
}

struct Engine::Linked {
  enum class Op {
    kWrite, kRead, kGate, kMeasure, kFlip, kSetCell, kReadCell,
    kSample, kSampleBit, kAssign, kSkip, kHalt,
  };

  Op op = Op::kSkip;
  Request request;
  std::vector<int> qubits;
  int bit = -1;
  int var = -1;
  int bits = 1;
  int parity = -1;
  double p = 0.5;
  Expr value;
  std::optional<Expr> condition;
  quantum::GateKind gate = quantum::GateKind::kIdentity;
  bool local_gate = false;
  std::optional<Request> identity;
  std::optional<RightSet> cell_rights;

  bool is_local() const {
    return op == Op::kSample || op == Op::kSampleBit || op == Op::kAssign ||
           (op == Op::kGate && local_gate);
  }
};

struct Engine::LinkedProgram {
  std::vector<Linked> code;
  std::vector<std::string> var_names;
  std::size_t num_vars = 0;
};

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::uint64_t Engine::extend_hash(std::uint64_t hash, const Request& r) {
  auto mix = [&hash](std::uint64_t v) {
    hash ^= v + 0x9e3779b97f4a7c15ULL + (hash << 6) + (hash >> 2);
  };
  mix(static_cast<std::uint64_t>(r.subject));
  mix(static_cast<std::uint64_t>(r.object.kind));
  mix(static_cast<std::uint64_t>(r.object.index + 1));
  mix(r.object.mask);
  mix(static_cast<std::uint64_t>(r.right));
  return hash;
}

Engine::Engine(std::shared_ptr<const System> system,
               const std::map<std::string, Program>& programs,
               const SchedulerSpec& scheduler, EngineOptions options)
    : system_(std::move(system)),
      options_(options),
      scheduler_(scheduler, system_->config().subjects),
      rng_(Rng(options.seed).derive("effects")),
      store_(system_->initial_attributes()),
      state_(quantum::StateVector::zero(system_->total_qubits())) {
  const int ns = system_->num_subjects();
  classical_.assign(static_cast<std::size_t>(system_->num_classical()), 0);
  locals_.resize(static_cast<std::size_t>(ns));
  programs_.resize(static_cast<std::size_t>(ns));
  pc_.assign(static_cast<std::size_t>(ns), 0);
  halted_.assign(static_cast<std::size_t>(ns), false);
  for (const auto& [name, program] : programs) {
    if (system_->find_subject(name) < 0) {
      throw RequestError(fmt::format("program for undeclared subject '{}'", name));
    }
  }
  for (int s = 0; s < ns; ++s) {
    auto linked = std::make_shared<LinkedProgram>();
    auto it = programs.find(system_->subject_name(s));
    if (it != programs.end()) {
      linked->var_names = it->second.vars;
      int max_var = static_cast<int>(it->second.vars.size()) - 1;
      for (const auto& instr : it->second.code) {
        linked->code.push_back(link(s, it->second, instr));
        const Linked& l = linked->code.back();
        max_var = std::max({max_var, l.var, l.value.max_var(),
                            l.condition ? l.condition->max_var() : -1});
      }
      linked->num_vars = static_cast<std::size_t>(max_var + 1);
    }
    locals_[static_cast<std::size_t>(s)].assign(linked->num_vars, 0);
    programs_[static_cast<std::size_t>(s)] = std::move(linked);
  }
  for (int s = 0; s < ns; ++s) advance_locals(s);
}

Engine::Linked Engine::link(int s, const Program& program,
                            const Instruction& instr) const {
  const System& sys = *system_;
  auto right = [&](const std::string& name) {
    const int r = sys.find_right(name);
    if (r < 0) throw RequestError(fmt::format("undeclared right '{}'", name));
    return r;
  };
  auto register_object = [&](const std::string& name, int* quantum_reg) {
    const int c = sys.find_classical(name);
    if (c >= 0) {
      if (sys.is_guard(c)) {
        throw EffectError(fmt::format("'{}' is an attribute guard; address its cells", name));
      }
      *quantum_reg = -1;
      return ObjectRef::classical(c);
    }
    const int q = sys.find_quantum(name);
    if (q < 0) throw RequestError(fmt::format("undeclared object '{}'", name));
    *quantum_reg = q;
    return ObjectRef::quantum({q});
  };
  auto offset_qubit = [&](int q, int offset) {
    if (offset < 0 || offset >= sys.quantum_size(q)) {
      throw EffectError(fmt::format("offset {} outside register '{}'", offset,
                                    sys.quantum_name(q)));
    }
    return sys.first_qubit(q) + offset;
  };
  auto register_qubits = [&](int q) {
    std::vector<int> out;
    for (int i = 0; i < sys.quantum_size(q); ++i) out.push_back(sys.first_qubit(q) + i);
    return out;
  };
  auto cell = [&](const CellName& name) {
    int c = store_.find_cell(name.attr, name.key);
    if (c < 0 && name.key.size() > 1) {
      std::vector<std::string> key = name.key;
      std::sort(key.begin(), key.end());
      c = store_.find_cell(name.attr, key);
      if (c < 0) {
        key = name.key;
        std::sort(key.begin() + 1, key.end());
        c = store_.find_cell(name.attr, key);
      }
    }
    if (c < 0) {
      throw RequestError(fmt::format("undeclared attribute cell attr:{}[{}]", name.attr,
                                     fmt::join(name.key, ",")));
    }
    return c;
  };
  auto check_var = [&](int v) {
    if (v < 0) throw ConfigError("negative variable index");
    return v;
  };
  (void)program;

  Linked l;
  l.request.subject = s;
  std::visit(
      Overloaded{
          [&](const WriteClassical& w) {
            l.op = Linked::Op::kWrite;
            int q = -1;
            l.request.object = register_object(w.object, &q);
            l.request.right = right(w.right);
            l.value = w.value;
            if (q >= 0) {
              l.qubits = w.bit ? std::vector<int>{offset_qubit(q, *w.bit)}
                               : register_qubits(q);
            } else if (w.bit) {
              if (*w.bit < 0 || *w.bit >= sys.classical_width(l.request.object.index)) {
                throw EffectError(fmt::format("bit {} outside register '{}'", *w.bit, w.object));
              }
              l.bit = *w.bit;
            }
          },
          [&](const ReadClassical& r) {
            l.op = Linked::Op::kRead;
            int q = -1;
            l.request.object = register_object(r.object, &q);
            l.request.right = right(r.right);
            l.var = check_var(r.var);
            if (q >= 0) {
              if (r.bit && l.request.right == sys.layout().right_measure &&
                  sys.quantum_size(q) > 1) {
                throw EffectError("a measure request must cover whole registers");
              }
              l.qubits = r.bit ? std::vector<int>{offset_qubit(q, *r.bit)}
                               : register_qubits(q);
            } else if (r.bit) {
              if (*r.bit < 0 || *r.bit >= sys.classical_width(l.request.object.index)) {
                throw EffectError(fmt::format("bit {} outside register '{}'", *r.bit, r.object));
              }
              l.bit = *r.bit;
            }
          },
          [&](const ApplyGate& g) {
            l.op = Linked::Op::kGate;
            l.gate = g.kind;
            l.condition = g.condition;
            std::vector<int> regs;
            for (const auto& t : g.targets) {
              if (t.pool) {
                if (t.offset < 0 || t.offset >= sys.pool_size(s)) {
                  throw EffectError(fmt::format("subject '{}' has no pool qubit {}",
                                                sys.subject_name(s), t.offset));
                }
                l.qubits.push_back(sys.pool_first(s) + t.offset);
                continue;
              }
              const int q = sys.find_quantum(t.reg);
              if (q < 0) throw RequestError(fmt::format("undeclared object '{}'", t.reg));
              regs.push_back(q);
              l.qubits.push_back(offset_qubit(q, t.offset));
            }
            quantum::validate_gate(quantum::GateSpec{g.kind, l.qubits}, sys.total_qubits());
            if (regs.empty()) {
              l.local_gate = true;
            } else {
              l.request.object = ObjectRef::quantum(regs);
              l.request.right = right(g.right.empty()
                                          ? quantum::default_gate_right({g.kind, l.qubits})
                                          : g.right);
            }
          },
          [&](const MeasureQ& m) {
            l.op = Linked::Op::kMeasure;
            std::vector<int> regs;
            for (const auto& name : m.registers) {
              const int q = sys.find_quantum(name);
              if (q < 0) throw RequestError(fmt::format("undeclared object '{}'", name));
              regs.push_back(q);
              for (int qb : register_qubits(q)) l.qubits.push_back(qb);
            }
            if (regs.empty()) throw EffectError("measurement of no registers");
            l.request.object = ObjectRef::quantum(regs);
            l.request.right = right(m.right);
            l.var = check_var(m.var);
          },
          [&](const FlipIf& f) {
            l.op = Linked::Op::kFlip;
            int q = -1;
            l.request.object = register_object(f.object, &q);
            if (q >= 0) throw EffectError("flip targets a classical register");
            l.request.right = right(f.right);
            l.condition = f.condition;
            if (f.identity_register) {
              const int iq = sys.find_quantum(*f.identity_register);
              if (iq < 0) {
                throw RequestError(fmt::format("undeclared object '{}'", *f.identity_register));
              }
              l.identity = Request{s, ObjectRef::quantum({iq}), right(f.identity_right)};
            }
          },
          [&](const SetAttrCell& c) {
            l.op = Linked::Op::kSetCell;
            l.request.object = ObjectRef::cell(cell(c.cell));
            l.request.right = right(c.right);
            l.value = c.value;
            if (c.rights) l.cell_rights = sys.rights_mask(*c.rights);
          },
          [&](const ReadAttrCell& c) {
            l.op = Linked::Op::kReadCell;
            l.request.object = ObjectRef::cell(cell(c.cell));
            l.request.right = right(c.right);
            l.var = check_var(c.var);
          },
          [&](const SampleUniform& u) {
            l.op = Linked::Op::kSample;
            l.var = check_var(u.var);
            if (u.bits < 1 || u.bits > 62) throw EffectError("sample width out of range [1, 62]");
            l.bits = u.bits;
            l.parity = u.parity ? (*u.parity & 1) : -1;
          },
          [&](const SampleBit& b) {
            l.op = Linked::Op::kSampleBit;
            l.var = check_var(b.var);
            l.p = b.p;
          },
          [&](const Assign& a) {
            l.op = Linked::Op::kAssign;
            l.var = check_var(a.var);
            l.value = a.value;
          },
          [&](const Skip&) { l.op = Linked::Op::kSkip; },
          [&](const Halt&) { l.op = Linked::Op::kHalt; },
      },
      instr);
  return l;
}

void Engine::advance_locals(int s) {
  const auto idx = static_cast<std::size_t>(s);
  const auto& code = programs_[idx]->code;
  while (pc_[idx] < code.size() && code[pc_[idx]].is_local()) {
    execute_local(s, code[pc_[idx]]);
    ++pc_[idx];
  }
  if (pc_[idx] >= code.size() || code[pc_[idx]].op == Linked::Op::kHalt) {
    halted_[idx] = true;
  }
}

void Engine::execute_local(int s, const Linked& l) {
  auto& locals = locals_[static_cast<std::size_t>(s)];
  switch (l.op) {
    case Linked::Op::kSample: {
      std::uint64_t v = rng_.next() & ((std::uint64_t{1} << l.bits) - 1);
      if (l.parity >= 0) {
        const int par = std::popcount(v & ((std::uint64_t{1} << (l.bits - 1)) - 1)) & 1;
        v &= ~(std::uint64_t{1} << (l.bits - 1));
        if (par != l.parity) v |= std::uint64_t{1} << (l.bits - 1);
      }
      locals[static_cast<std::size_t>(l.var)] = static_cast<std::int64_t>(v);
      break;
    }
    case Linked::Op::kSampleBit:
      locals[static_cast<std::size_t>(l.var)] = rng_.bernoulli(l.p) ? 1 : 0;
      break;
    case Linked::Op::kAssign:
      locals[static_cast<std::size_t>(l.var)] = l.value.eval(locals);
      break;
    case Linked::Op::kGate:
      state_ = quantum::apply_gate(std::move(state_), quantum::GateSpec{l.gate, l.qubits});
      break;
    default:
      throw InvariantError("non-local instruction executed locally");
  }
}

std::uint64_t Engine::measure_qubits(const std::vector<int>& qubits) {
  auto [record, post] = quantum::measure_complete(std::move(state_), qubits, rng_);
  state_ = std::move(post);
  return record.outcome;
}

void Engine::apply_effect(int s, const Linked& l, const Request& request) {
  auto& locals = locals_[static_cast<std::size_t>(s)];
  const System& sys = *system_;
  switch (l.op) {
    case Linked::Op::kWrite: {
      const std::int64_t v = l.value.eval(locals);
      if (request.object.kind == ObjectRef::Kind::kQuantum) {
        for (std::size_t m = 0; m < l.qubits.size(); ++m) {
          const std::uint64_t want = (static_cast<std::uint64_t>(v) >> m) & 1ULL;
          if (measure_qubits({l.qubits[m]}) != want) {
            state_ = quantum::apply_gate(std::move(state_),
                                         {quantum::GateKind::kX, {l.qubits[m]}});
          }
        }
        break;
      }
      auto& reg = classical_[static_cast<std::size_t>(request.object.index)];
      if (l.bit >= 0) {
        reg = (reg & ~(std::int64_t{1} << l.bit)) | ((v & 1) << l.bit);
      } else {
        const int w = sys.classical_width(request.object.index);
        reg = v & static_cast<std::int64_t>((std::uint64_t{1} << w) - 1);
      }
      break;
    }
    case Linked::Op::kRead: {
      std::int64_t v = 0;
      if (request.object.kind == ObjectRef::Kind::kQuantum) {
        v = static_cast<std::int64_t>(measure_qubits(l.qubits));
      } else {
        v = classical_[static_cast<std::size_t>(request.object.index)];
        if (l.bit >= 0) v = (v >> l.bit) & 1;
      }
      locals[static_cast<std::size_t>(l.var)] = v;
      break;
    }
    case Linked::Op::kGate:
      if (!l.condition || l.condition->eval(locals) != 0) {
        state_ = quantum::apply_gate(std::move(state_), quantum::GateSpec{l.gate, l.qubits});
      }
      break;
    case Linked::Op::kMeasure:
      locals[static_cast<std::size_t>(l.var)] =
          static_cast<std::int64_t>(measure_qubits(l.qubits));
      break;
    case Linked::Op::kFlip:
      if (request.object.kind == ObjectRef::Kind::kClassical) {
        auto& reg = classical_[static_cast<std::size_t>(request.object.index)];
        const int w = sys.classical_width(request.object.index);
        reg = ~reg & static_cast<std::int64_t>((std::uint64_t{1} << w) - 1);
      }
      break;
    case Linked::Op::kSetCell: {
      const int cell = request.object.index;
      if (cell == sys.phase_cell()) {
        sys.apply_phase(store_, static_cast<std::uint64_t>(l.value.eval(locals)));
        break;
      }
      const auto& def = store_.attribute(store_.cell_attribute(cell));
      if (l.cell_rights) {
        if (def.kind != AttrKind::kRights) throw EffectError("right set written to a non-right cell");
        store_.set(cell, *l.cell_rights);
        break;
      }
      const std::int64_t v = l.value.eval(locals);
      switch (def.kind) {
        case AttrKind::kBool:
          store_.set(cell, v != 0 ? 1 : 0);
          break;
        case AttrKind::kLabel:
          if (v < 1 || v > sys.model().k) {
            throw EffectError(fmt::format("group label {} out of range [1, {}]", v, sys.model().k));
          }
          store_.set(cell, static_cast<std::uint64_t>(v));
          break;
        case AttrKind::kRights: {
          const int nr = sys.num_rights();
          const std::uint64_t mask = nr >= 64 ? ~0ULL : ((std::uint64_t{1} << nr) - 1);
          store_.set(cell, static_cast<std::uint64_t>(v) & mask);
          break;
        }
        case AttrKind::kInt:
          store_.set(cell, static_cast<std::uint64_t>(v));
          break;
      }
      break;
    }
    case Linked::Op::kReadCell:
      locals[static_cast<std::size_t>(l.var)] =
          static_cast<std::int64_t>(store_.get(request.object.index));
      break;
    default:
      throw InvariantError("instruction has no effect handler");
  }
}

bool Engine::authorize(const Request& request) {
  policy::OpCounter counter;
  const bool ok = policy::authorize(system_->model(), system_->layout(), store_, request, counter);
  metrics_.push_back(OpSample{request.object.length(), counter.ops, 0});
  return ok;
}

bool Engine::check(const Request& request) const {
  policy::OpCounter counter;
  return policy::authorize(system_->model(), system_->layout(), store_, request, counter);
}

StepResult Engine::step() {
  if (finished_) return {};
  if (slots_ >= options_.max_slots) {
    finished_ = true;
    return {};
  }
  const auto next = scheduler_.next(halted_, prefix_hash_);
  if (!next) {
    finished_ = true;
    return {};
  }
  const int s = *next;
  const auto idx = static_cast<std::size_t>(s);
  ++slots_;
  StepResult result;
  result.kind = StepResult::Kind::kSkip;
  result.subject = s;
  if (halted_[idx]) return result;

  const Linked& instr = programs_[idx]->code[pc_[idx]];
  std::optional<Request> request;
  bool emits_effect = true;
  if (instr.op == Linked::Op::kFlip) {
    if (instr.condition->eval(locals_[idx]) != 0) {
      request = instr.request;
    } else if (instr.identity) {
      request = *instr.identity;
      emits_effect = false;
    }
  } else if (instr.op != Linked::Op::kSkip) {
    request = instr.request;
  }

  if (request) {
    const bool ok = authorize(*request);
    if (ok) {
      if (emits_effect) apply_effect(s, instr, *request);
      policy::OpCounter counter;
      policy::post_update(system_->model(), system_->layout(), store_, *request, counter);
      metrics_.back().post_ops = counter.ops;
    }
    HistoryEntry entry{history_.size(), *request, ok};
    history_.push_back(entry);
    prefix_hash_ = extend_hash(prefix_hash_, *request);
    result.kind = StepResult::Kind::kRequest;
    result.entry = entry;
    if (!ok && options_.denial == DenialPolicy::kHaltSubject) {
      halted_[idx] = true;
      return result;
    }
  }
  ++pc_[idx];
  advance_locals(s);
  return result;
}

void Engine::run() {
  while (step().kind != StepResult::Kind::kFinished) {
  }
}

bool Engine::halted(std::string_view subject) const {
  const int s = system_->find_subject(subject);
  if (s < 0) throw RequestError(fmt::format("undeclared subject '{}'", subject));
  return halted_[static_cast<std::size_t>(s)];
}

std::int64_t Engine::classical_value(std::string_view name) const {
  const int c = system_->find_classical(name);
  if (c < 0) throw RequestError(fmt::format("undeclared classical register '{}'", name));
  return classical_[static_cast<std::size_t>(c)];
}

std::optional<std::int64_t> Engine::find_local(std::string_view subject,
                                               std::string_view var) const {
  const int s = system_->find_subject(subject);
  if (s < 0) return std::nullopt;
  const auto idx = static_cast<std::size_t>(s);
  const auto& names = programs_[idx]->var_names;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == var) return locals_[idx][i];
  }
  return std::nullopt;
}

std::int64_t Engine::local(std::string_view subject, std::string_view var) const {
  auto v = find_local(subject, var);
  if (!v) throw RequestError(fmt::format("no local '{}' for subject '{}'", var, subject));
  return *v;
}

std::vector<std::string> Engine::observable(std::string_view subject) const {
  const System& sys = *system_;
  const int s = sys.find_subject(subject);
  if (s < 0) throw RequestError(fmt::format("undeclared subject '{}'", subject));
  std::vector<std::string> out;
  const int read = sys.find_right("read");
  if (read >= 0) {
    for (int c = 0; c < sys.num_classical_registers(); ++c) {
      if (check(Request{s, ObjectRef::classical(c), read})) out.push_back(sys.classical_name(c));
    }
    for (int q = 0; q < sys.num_quantum(); ++q) {
      if (check(Request{s, ObjectRef::quantum({q}), read})) out.push_back(sys.quantum_name(q));
    }
  }
  out.emplace_back("L");
  return out;
}

}  // namespace qacl::acl
