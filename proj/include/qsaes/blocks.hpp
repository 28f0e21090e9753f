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

// Circuit builders for the S-AES primitives: in-place S-box and inverse,
// MixColumns, the four split MixColumns variants (classical-parameter and
// fully quantum forms), classical/quantum AddKey, and the free ShiftRows /
// RotateNibbles relabelings.
//
// The S-box sequence is synthesized once with transformation-based (MMD)
// synthesis from the classical table; linear maps are synthesized by GF(2)
// Gauss-Jordan elimination into CNOT networks. Both are deterministic, and
// exhaustive equivalence against the classical module is the correctness
// authority for every builder here.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qsaes/circuit.hpp"
#include "qsaes/saes.hpp"

namespace qsaes {

// Four wires holding one nibble, q[0] = bit a0 = most significant.
struct NibbleWires {
  std::array<QubitId, 4> q{};

  static NibbleWires of(std::span<const QubitId> wires, std::size_t offset = 0) {
    NibbleWires w;
    for (int i = 0; i < 4; ++i) w.q[i] = wires[offset + i];
    return w;
  }
};

// Eight wires holding one byte, q[0] = a0; hi()/lo() view the two nibbles.
struct ByteWires {
  std::array<QubitId, 8> q{};

  static ByteWires of(std::span<const QubitId> wires, std::size_t offset = 0) {
    ByteWires w;
    for (int i = 0; i < 8; ++i) w.q[i] = wires[offset + i];
    return w;
  }
  NibbleWires hi() const { return {{q[0], q[1], q[2], q[3]}}; }
  NibbleWires lo() const { return {{q[4], q[5], q[6], q[7]}}; }
};

namespace synth {

// One reversible step over abstract wire indices: flip `target` iff all wires
// in `control_mask` are 1 (bit i of masks = wire i).
struct MaskGate {
  std::uint32_t control_mask = 0;
  std::uint32_t target = 0;
};

// Transformation-based (MMD) synthesis of an n-wire permutation into
// {X, CNOT, Toffoli, MCX} steps, in circuit order. Works on the output side
// of the truth table; the emitted list is the reversal of the fixups.
inline std::vector<MaskGate> synthesize_permutation(std::span<const std::uint8_t> table,
                                                    int n) {
  const std::uint32_t size = 1u << n;
  std::vector<std::uint32_t> f(table.begin(), table.end());
  std::vector<MaskGate> out_side;
  auto apply_out = [&](std::uint32_t cmask, std::uint32_t tbit) {
    for (std::uint32_t x = 0; x < size; ++x) {
      if ((f[x] & cmask) == cmask) f[x] ^= 1u << tbit;
    }
    out_side.push_back({cmask, tbit});
  };
  for (std::uint32_t x = 0; x < size; ++x) {
    std::uint32_t c = f[x];
    if (c == x) continue;
    for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(n); ++b) {
      if (((x >> b) & 1) && !((c >> b) & 1)) {
        apply_out(c, b);
        c |= 1u << b;
      }
    }
    for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(n); ++b) {
      if (((c >> b) & 1) && !((x >> b) & 1)) {
        apply_out(x, b);
        c ^= 1u << b;
      }
    }
  }
  return {out_side.rbegin(), out_side.rend()};
}

// Gauss-Jordan synthesis of an invertible GF(2) map into CNOTs (src, dst),
// circuit order. rows[i] = mask of input wires feeding output wire i.
inline std::vector<std::pair<int, int>> synthesize_linear(std::span<const std::uint32_t> rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::uint32_t> m(rows.begin(), rows.end());
  std::vector<std::pair<int, int>> ops;  // row[dst] ^= row[src]
  auto row_op = [&](int src, int dst) {
    m[dst] ^= m[src];
    ops.emplace_back(src, dst);
  };
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if ((m[r] >> col) & 1) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw CircuitError("linear map is singular");
    if (piv != col) {
      row_op(piv, col);
      row_op(col, piv);
      row_op(piv, col);
    }
    for (int r = 0; r < n; ++r) {
      if (r != col && ((m[r] >> col) & 1)) row_op(col, r);
    }
  }
  return {ops.rbegin(), ops.rend()};
}

// Wire-space row masks of the "multiply by 4 in GF(16)" map on one nibble
// (wire 0 = a0 = msb): out w0 = w2, w1 = w0^w3, w2 = w0^w1, w3 = w1.
inline constexpr std::array<std::uint32_t, 4> kTimes4Rows = {
    0b0100, 0b1001, 0b0011, 0b0010};

// Wire-space rows of the full 8-bit MixColumns map (wire i = a_i).
inline constexpr std::array<std::uint32_t, 8> kMixColumnsRows = [] {
  constexpr std::array<std::array<int, 3>, 8> eq = {{{0, 6, -1},
                                                     {1, 4, 7},
                                                     {2, 4, 5},
                                                     {3, 5, -1},
                                                     {4, 2, -1},
                                                     {5, 3, 0},
                                                     {6, 1, 0},
                                                     {7, 1, -1}}};
  std::array<std::uint32_t, 8> rows{};
  for (int i = 0; i < 8; ++i) {
    for (int s : eq[i]) {
      if (s >= 0) rows[i] |= 1u << s;
    }
  }
  return rows;
}();

// Pinned S-box sequence, computed once from the classical table.
inline const std::vector<MaskGate>& sbox_sequence() {
  static const std::vector<MaskGate> seq = [] {
    std::array<std::uint8_t, 16> table{};
    for (int i = 0; i < 16; ++i) table[i] = saes::kSbox[i];
    return synthesize_permutation(table, 4);
  }();
  return seq;
}

}  // namespace synth

namespace detail {

// MaskGate semantics use value bits (bit 3 = a0 = msb); wire i carries a_i,
// so value bit b corresponds to w.q[3 - b].
inline void append_mask_gates(CircuitBuilder& b, const NibbleWires& w,
                              std::span<const synth::MaskGate> seq,
                              bool reversed = false) {
  auto emit = [&](const synth::MaskGate& g) {
    std::vector<QubitId> controls;
    for (int bit = 3; bit >= 0; --bit) {
      if ((g.control_mask >> bit) & 1) controls.push_back(w.q[3 - bit]);
    }
    const QubitId target = w.q[3 - static_cast<int>(g.target)];
    switch (controls.size()) {
      case 0: b.x(target); break;
      case 1: b.cnot(controls[0], target); break;
      case 2: b.toffoli(controls[0], controls[1], target); break;
      default: b.mcx(std::move(controls), target); break;
    }
  };
  if (reversed) {
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) emit(*it);
  } else {
    for (const auto& g : seq) emit(g);
  }
}

inline void append_linear(CircuitBuilder& b, std::span<const QubitId> wires,
                          std::span<const std::uint32_t> rows) {
  for (const auto& [src, dst] : synth::synthesize_linear(rows)) {
    b.cnot(wires[src], wires[dst]);
  }
}

}  // namespace detail

// In-place |n> -> |sbox(n)> on four wires, no ancilla.
inline void qc_sbox(CircuitBuilder& b, const NibbleWires& w) {
  detail::append_mask_gates(b, w, synth::sbox_sequence());
}

// Structural inverse of qc_sbox (reversed gate order).
inline void qc_sbox_inv(CircuitBuilder& b, const NibbleWires& w) {
  detail::append_mask_gates(b, w, synth::sbox_sequence(), /*reversed=*/true);
}

// CNOT-only in-place realization of the 8-bit MixColumns map.
inline void qc_mix_columns(CircuitBuilder& b, const ByteWires& w) {
  detail::append_linear(b, w.q, synth::kMixColumnsRows);
}

// X gate on wires[i] wherever the corresponding bit of `value` is 1
// (first wire matches the most significant bit).
inline void qc_add_classical(CircuitBuilder& b, std::span<const QubitId> wires,
                             std::uint64_t value) {
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if ((value >> (wires.size() - 1 - i)) & 1) b.x(wires[i]);
  }
}

// Register XOR: dst ^= src, wirewise CNOTs.
inline void qc_add_quantum(CircuitBuilder& b, std::span<const QubitId> src,
                           std::span<const QubitId> dst) {
  if (src.size() != dst.size()) throw CircuitError("register width mismatch");
  for (std::size_t i = 0; i < src.size(); ++i) b.cnot(src[i], dst[i]);
}

inline void qc_add_quantum(CircuitBuilder& b, const NibbleWires& src,
                           const NibbleWires& dst) {
  qc_add_quantum(b, std::span<const QubitId>(src.q),
                 std::span<const QubitId>(dst.q));
}

// Split MixColumns MC_j^i of the paper: `out_nibble` = j (which output nibble
// forms on the wires), `classical_nibble` = i (which input nibble is known
// classically). The wires hold the other input nibble. Affine on 4 wires:
//   out on the non-classical side's own column position  -> x4 linear part,
//   out on the opposite position                         -> identity part,
// with the classical contribution folded into build-time X gates.
inline void qc_mc_split(CircuitBuilder& b, int out_nibble, int classical_nibble,
                        const NibbleWires& w, saes::Nibble classical_value) {
  if (out_nibble < 0 || out_nibble > 1 || classical_nibble < 0 || classical_nibble > 1) {
    throw CircuitError("split MC nibble selectors must be 0 or 1");
  }
  // Column map: (hi, lo) -> (hi ^ 4*lo, 4*hi ^ lo). The wires carry input
  // nibble (1 - classical_nibble).
  const bool wires_are_hi = classical_nibble == 1;
  const bool out_is_hi = out_nibble == 0;
  saes::Nibble offset;
  if (out_is_hi == wires_are_hi) {
    // output = wires ^ 4*classical
    offset = saes::gf16_mul(4, classical_value);
  } else {
    // output = 4*wires ^ classical
    detail::append_linear(b, w.q, synth::kTimes4Rows);
    offset = classical_value;
  }
  qc_add_classical(b, w.q, offset);
}

// Fully quantum split MC: classically controlled X gates replaced by CNOTs.
// `held` carries input nibble `held_nibble` and is preserved; `transformed`
// carries the other input nibble and ends holding output nibble `out_nibble`.
inline void qc_mc_split_quantum(CircuitBuilder& b, int out_nibble, int held_nibble,
                                const NibbleWires& held,
                                const NibbleWires& transformed) {
  if (out_nibble < 0 || out_nibble > 1 || held_nibble < 0 || held_nibble > 1) {
    throw CircuitError("split MC nibble selectors must be 0 or 1");
  }
  const bool transformed_is_hi = held_nibble == 1;
  const bool out_is_hi = out_nibble == 0;
  if (out_is_hi == transformed_is_hi) {
    // transformed ^= 4*held
    for (int i = 0; i < 4; ++i) {
      for (int s = 0; s < 4; ++s) {
        if ((synth::kTimes4Rows[i] >> s) & 1) b.cnot(held.q[s], transformed.q[i]);
      }
    }
  } else {
    // transformed <- 4*transformed ^ held
    detail::append_linear(b, transformed.q, synth::kTimes4Rows);
    qc_add_quantum(b, held, transformed);
  }
}

// ShiftRows on a 4-nibble text block: swaps the N1 and N3 wire sets. Free.
inline void qc_shift_rows(CircuitBuilder& b, const std::array<NibbleWires, 4>& text) {
  std::vector<std::pair<QubitId, QubitId>> mapping;
  for (int i = 0; i < 4; ++i) {
    mapping.emplace_back(text[1].q[i], text[3].q[i]);
    mapping.emplace_back(text[3].q[i], text[1].q[i]);
  }
  b.relabel(mapping);
}

// RotateNibbles on a byte register: swaps the two nibble wire sets. Free.
inline void qc_rotate(CircuitBuilder& b, const ByteWires& w) {
  std::vector<std::pair<QubitId, QubitId>> mapping;
  for (int i = 0; i < 4; ++i) {
    mapping.emplace_back(w.q[i], w.q[i + 4]);
    mapping.emplace_back(w.q[i + 4], w.q[i]);
  }
  b.relabel(mapping);
}

}  // namespace qsaes
