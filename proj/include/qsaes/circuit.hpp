// Copyright 2026 The qsaes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Quantum-circuit intermediate representation: gates over named qubit
// registers, structural inversion, free relabeling (ShiftRows / Rotate),
// statistics and a deterministic text export.
//
// Every gate kind here is self-inverse, so structural inversion is gate-list
// reversal. Multi-controlled X/Z are primitives and are never decomposed;
// that keeps qubit counts directly comparable across oracle variants.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsaes {

using QubitId = std::uint32_t;

enum class GateKind : std::uint8_t {
  PauliX,
  Hadamard,
  PauliZ,
  Cnot,
  Toffoli,
  MultiControlledX,
  MultiControlledZ,
};

inline constexpr int kGateKindCount = 7;

inline std::string_view gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::PauliX: return "x";
    case GateKind::Hadamard: return "h";
    case GateKind::PauliZ: return "z";
    case GateKind::Cnot: return "cx";
    case GateKind::Toffoli: return "ccx";
    case GateKind::MultiControlledX: return "mcx";
    case GateKind::MultiControlledZ: return "mcz";
  }
  return "?";
}

struct Gate {
  GateKind kind = GateKind::PauliX;
  // For MultiControlledZ the gate is symmetric and `controls` holds the whole
  // operand set (sorted); `target` is unused.
  std::vector<QubitId> controls;
  QubitId target = 0;

  static Gate x(QubitId t) { return {GateKind::PauliX, {}, t}; }
  static Gate h(QubitId t) { return {GateKind::Hadamard, {}, t}; }
  static Gate z(QubitId t) { return {GateKind::PauliZ, {}, t}; }
  static Gate cnot(QubitId c, QubitId t) { return {GateKind::Cnot, {c}, t}; }
  static Gate toffoli(QubitId c0, QubitId c1, QubitId t) {
    return {GateKind::Toffoli, {c0, c1}, t};
  }
  static Gate mcx(std::vector<QubitId> cs, QubitId t) {
    return {GateKind::MultiControlledX, std::move(cs), t};
  }
  static Gate mcz(std::vector<QubitId> qs) {
    std::sort(qs.begin(), qs.end());
    return {GateKind::MultiControlledZ, std::move(qs), 0};
  }

  bool has_target() const { return kind != GateKind::MultiControlledZ; }
  bool is_phase_kind() const {
    return kind == GateKind::PauliZ || kind == GateKind::MultiControlledZ;
  }
  std::vector<QubitId> operands() const {
    std::vector<QubitId> q = controls;
    if (has_target()) q.push_back(target);
    return q;
  }

  friend bool operator==(const Gate& a, const Gate& b) {
    return a.kind == b.kind && a.controls == b.controls &&
           (a.kind == GateKind::MultiControlledZ || a.target == b.target);
  }
};

// A qubit-reference permutation applied between gates; `perm[q]` is the
// previously-current reference that q resolves to from this point on.
struct RelabelEvent {
  std::size_t gate_index = 0;  // sits between gates[gate_index-1] and gates[gate_index]
  std::vector<QubitId> perm;
};

struct CircuitStats {
  std::uint32_t qubit_count = 0;
  std::array<std::size_t, kGateKindCount> count_by_kind{};
  std::size_t total_gates = 0;
  std::size_t depth = 0;

  std::size_t count(GateKind k) const {
    return count_by_kind[static_cast<std::size_t>(k)];
  }
};

struct Register {
  std::string name;
  std::vector<QubitId> qubits;  // initial (logical) ids, msb first
};

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_gate(const Gate& g, std::uint32_t qubit_count) {
  auto ops = g.operands();
  for (QubitId q : ops) {
    if (q >= qubit_count) {
      throw CircuitError("gate references qubit " + std::to_string(q) +
                         " outside circuit of " + std::to_string(qubit_count) +
                         " qubits");
    }
  }
  std::sort(ops.begin(), ops.end());
  if (std::adjacent_find(ops.begin(), ops.end()) != ops.end()) {
    throw CircuitError("gate operands must be distinct");
  }
  const std::size_t ctrls = g.controls.size();
  switch (g.kind) {
    case GateKind::PauliX:
    case GateKind::Hadamard:
    case GateKind::PauliZ:
      if (ctrls != 0) throw CircuitError("single-qubit gate with controls");
      break;
    case GateKind::Cnot:
      if (ctrls != 1) throw CircuitError("cx needs exactly one control");
      break;
    case GateKind::Toffoli:
      if (ctrls != 2) throw CircuitError("ccx needs exactly two controls");
      break;
    case GateKind::MultiControlledX:
      if (ctrls < 1) throw CircuitError("mcx needs at least one control");
      break;
    case GateKind::MultiControlledZ:
      if (ctrls < 2) throw CircuitError("mcz needs at least two operands");
      break;
  }
}

inline std::vector<QubitId> inverse_perm(const std::vector<QubitId>& p) {
  std::vector<QubitId> inv(p.size());
  for (QubitId i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

}  // namespace detail

struct Circuit {
  std::uint32_t qubit_count = 0;
  std::vector<Gate> gates;             // operands are physical qubit ids
  std::vector<Register> registers;     // declaration order
  std::vector<RelabelEvent> relabels;  // annotation; gates are already resolved
  std::vector<QubitId> final_map;      // reference -> physical at circuit end

  const Register* find_register(std::string_view name) const {
    for (const auto& r : registers) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }

  // Register qubits as physical wires at the end of the circuit.
  std::vector<QubitId> resolved_register(std::string_view name) const {
    const Register* r = find_register(name);
    if (r == nullptr) throw CircuitError("no register named " + std::string(name));
    std::vector<QubitId> out;
    out.reserve(r->qubits.size());
    for (QubitId q : r->qubits) out.push_back(final_map[q]);
    return out;
  }

  CircuitStats stats() const {
    CircuitStats s;
    s.qubit_count = qubit_count;
    s.total_gates = gates.size();
    std::vector<std::size_t> frontier(qubit_count, 0);
    for (const auto& g : gates) {
      ++s.count_by_kind[static_cast<std::size_t>(g.kind)];
      std::size_t layer = 0;
      for (QubitId q : g.operands()) layer = std::max(layer, frontier[q]);
      ++layer;
      for (QubitId q : g.operands()) frontier[q] = layer;
      s.depth = std::max(s.depth, layer);
    }
    return s;
  }

  Circuit inverse() const {
    Circuit inv;
    inv.qubit_count = qubit_count;
    inv.registers = registers;
    inv.gates.assign(gates.rbegin(), gates.rend());
    for (auto it = relabels.rbegin(); it != relabels.rend(); ++it) {
      inv.relabels.push_back(
          {gates.size() - it->gate_index, detail::inverse_perm(it->perm)});
    }
    inv.final_map = detail::inverse_perm(final_map);
    return inv;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "qubits " << qubit_count << "\n";
    for (const auto& r : registers) {
      out << "reg " << r.name;
      for (std::size_t i = 0; i < r.qubits.size(); ++i) {
        out << (i == 0 ? " " : ",") << "q[" << r.qubits[i] << "]";
      }
      out << "\n";
    }
    std::size_t next_event = 0;
    auto emit_events_at = [&](std::size_t gate_index) {
      while (next_event < relabels.size() &&
             relabels[next_event].gate_index == gate_index) {
        const auto& perm = relabels[next_event].perm;
        out << "# relabel";
        bool first = true;
        for (QubitId q = 0; q < perm.size(); ++q) {
          if (perm[q] == q) continue;
          out << (first ? " " : ",") << "q[" << q << "]->q[" << perm[q] << "]";
          first = false;
        }
        out << "\n";
        ++next_event;
      }
    };
    for (std::size_t i = 0; i < gates.size(); ++i) {
      emit_events_at(i);
      const Gate& g = gates[i];
      out << gate_kind_name(g.kind);
      bool first = true;
      for (QubitId q : g.controls) {
        out << (first ? " " : ",") << "q[" << q << "]";
        first = false;
      }
      if (g.has_target()) {
        out << (first ? " " : ",") << "q[" << g.target << "]";
      }
      out << "\n";
    }
    emit_events_at(gates.size());
    return out.str();
  }
};

// Single-owner builder. References passed to append() are interpreted through
// the current relabeling; stored gates always carry physical wire ids.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(
      const std::vector<std::pair<std::string, std::uint32_t>>& register_spec) {
    QubitId next = 0;
    for (const auto& [name, width] : register_spec) {
      if (width == 0) throw CircuitError("register '" + name + "' has zero width");
      if (circuit_.find_register(name) != nullptr) {
        throw CircuitError("duplicate register name '" + name + "'");
      }
      Register r{name, {}};
      r.qubits.resize(width);
      std::iota(r.qubits.begin(), r.qubits.end(), next);
      next += width;
      circuit_.registers.push_back(std::move(r));
    }
    circuit_.qubit_count = next;
    phi_.resize(next);
    std::iota(phi_.begin(), phi_.end(), 0);
  }

  std::uint32_t qubit_count() const { return circuit_.qubit_count; }

  // Logical qubit ids of a register (stable across relabels).
  std::span<const QubitId> reg(std::string_view name) const {
    const Register* r = circuit_.find_register(name);
    if (r == nullptr) throw CircuitError("no register named " + std::string(name));
    return r->qubits;
  }
  QubitId reg(std::string_view name, std::size_t i) const {
    auto qs = reg(name);
    if (i >= qs.size()) throw CircuitError("register index out of range");
    return qs[i];
  }

  void append(Gate g) {
    for (QubitId& q : g.controls) q = resolve(q);
    if (g.has_target()) g.target = resolve(g.target);
    if (g.kind == GateKind::MultiControlledZ) {
      std::sort(g.controls.begin(), g.controls.end());
    }
    detail::check_gate(g, circuit_.qubit_count);
    circuit_.gates.push_back(std::move(g));
  }

  void x(QubitId t) { append(Gate::x(t)); }
  void h(QubitId t) { append(Gate::h(t)); }
  void z(QubitId t) { append(Gate::z(t)); }
  void cnot(QubitId c, QubitId t) { append(Gate::cnot(c, t)); }
  void toffoli(QubitId c0, QubitId c1, QubitId t) {
    append(Gate::toffoli(c0, c1, t));
  }
  void mcx(std::vector<QubitId> cs, QubitId t) {
    append(Gate::mcx(std::move(cs), t));
  }
  void mcz(std::vector<QubitId> qs) { append(Gate::mcz(std::move(qs))); }

  // After relabel(m), a reference to q resolves to whatever m(q) resolved to
  // before. The mapping must be a permutation of its own domain; unlisted
  // qubits are fixed. Identity mappings are dropped (no event recorded).
  void relabel(const std::vector<std::pair<QubitId, QubitId>>& mapping) {
    std::vector<QubitId> perm(circuit_.qubit_count);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<QubitId> sources, targets;
    for (const auto& [from, to] : mapping) {
      if (from >= circuit_.qubit_count || to >= circuit_.qubit_count) {
        throw CircuitError("relabel reference out of range");
      }
      perm[from] = to;
      sources.push_back(from);
      targets.push_back(to);
    }
    std::sort(sources.begin(), sources.end());
    std::sort(targets.begin(), targets.end());
    if (std::adjacent_find(sources.begin(), sources.end()) != sources.end() ||
        sources != targets) {
      throw CircuitError("relabel mapping is not a permutation");
    }
    if (std::all_of(mapping.begin(), mapping.end(),
                    [](const auto& m) { return m.first == m.second; })) {
      return;
    }
    circuit_.relabels.push_back({circuit_.gates.size(), perm});
    std::vector<QubitId> next(circuit_.qubit_count);
    for (QubitId q = 0; q < circuit_.qubit_count; ++q) next[q] = phi_[perm[q]];
    phi_ = std::move(next);
  }

  std::size_t mark() const { return circuit_.gates.size(); }

  // Appends the structural inverse of gates [begin, end): gates reversed
  // (all kinds are self-inverse), interleaved relabelings undone so the
  // reference map rewinds to its state at `begin`.
  void append_inverse_of_range(std::size_t begin, std::size_t end) {
    if (begin > end || end > circuit_.gates.size()) {
      throw CircuitError("invalid inverse range");
    }
    // Relabel events inside (begin, end], newest first.
    std::vector<RelabelEvent> events;
    for (const auto& e : circuit_.relabels) {
      if (e.gate_index > begin && e.gate_index <= end) events.push_back(e);
    }
    std::size_t pos = end;
    auto ev = events.rbegin();
    while (pos > begin) {
      while (ev != events.rend() && ev->gate_index == pos) {
        apply_inverse_relabel(ev->perm);
        ++ev;
      }
      --pos;
      circuit_.gates.push_back(circuit_.gates[pos]);  // already physical
    }
    while (ev != events.rend() && ev->gate_index == begin) {
      apply_inverse_relabel(ev->perm);
      ++ev;
    }
  }

  Circuit finish() && {
    circuit_.final_map = std::move(phi_);
    return std::move(circuit_);
  }

 private:
  QubitId resolve(QubitId q) const {
    if (q >= circuit_.qubit_count) {
      throw CircuitError("qubit reference out of range");
    }
    return phi_[q];
  }

  void apply_inverse_relabel(const std::vector<QubitId>& perm) {
    const auto inv = detail::inverse_perm(perm);
    circuit_.relabels.push_back({circuit_.gates.size(), inv});
    std::vector<QubitId> next(circuit_.qubit_count);
    for (QubitId q = 0; q < circuit_.qubit_count; ++q) next[q] = phi_[inv[q]];
    phi_ = std::move(next);
  }

  Circuit circuit_;
  std::vector<QubitId> phi_;  // reference -> physical
};

// Packs register wire values into an integer, first wire = most significant.
inline std::uint64_t pack_bits(std::uint64_t bits, std::span<const QubitId> wires) {
  std::uint64_t v = 0;
  for (QubitId w : wires) v = (v << 1) | ((bits >> w) & 1);
  return v;
}

// Scatters a packed value onto register wires (first wire = msb) over `base`.
inline std::uint64_t scatter_bits(std::uint64_t value, std::span<const QubitId> wires,
                                  std::uint64_t base = 0) {
  for (std::size_t i = 0; i < wires.size(); ++i) {
    const std::uint64_t bit = (value >> (wires.size() - 1 - i)) & 1;
    base = (base & ~(std::uint64_t{1} << wires[i])) | (bit << wires[i]);
  }
  return base;
}

}  // namespace qsaes
