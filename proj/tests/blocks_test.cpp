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

#include "qsaes/blocks.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "qsaes/emulator.hpp"

namespace qsaes {
namespace {

using saes::Byte;
using saes::Nibble;

NibbleWires first_nibble() { return {{0, 1, 2, 3}}; }

// Runs a 4-wire circuit on a nibble value (wire 0 = msb).
Nibble run_nibble(const Circuit& c, Nibble in) {
  const NibbleWires w = first_nibble();
  const std::uint64_t bits = scatter_bits(in, w.q);
  const PhasedBasisState out = emulate(c, {bits, 1});
  return static_cast<Nibble>(pack_bits(out.bits, w.q));
}

TEST(QcSbox, MatchesClassicalTableExhaustively) {
  CircuitBuilder b({{"n", 4}});
  qc_sbox(b, first_nibble());
  const Circuit c = std::move(b).finish();
  for (int n = 0; n < 16; ++n) {
    EXPECT_EQ(run_nibble(c, static_cast<Nibble>(n)), saes::sbox(static_cast<Nibble>(n)));
  }
}

TEST(QcSbox, ComposedWithInverseIsIdentity) {
  CircuitBuilder b({{"n", 4}});
  qc_sbox(b, first_nibble());
  qc_sbox_inv(b, first_nibble());
  const Circuit c = std::move(b).finish();
  for (int n = 0; n < 16; ++n) {
    EXPECT_EQ(run_nibble(c, static_cast<Nibble>(n)), n);
  }
}

TEST(QcSbox, InverseMapsTableBackwards) {
  CircuitBuilder b({{"n", 4}});
  qc_sbox_inv(b, first_nibble());
  const Circuit c = std::move(b).finish();
  for (int n = 0; n < 16; ++n) {
    EXPECT_EQ(run_nibble(c, saes::sbox(static_cast<Nibble>(n))), n);
  }
}

TEST(QcSbox, InverseIsStructuralReversal) {
  CircuitBuilder fwd({{"n", 4}});
  qc_sbox(fwd, first_nibble());
  const Circuit f = std::move(fwd).finish();

  CircuitBuilder bwd({{"n", 4}});
  qc_sbox_inv(bwd, first_nibble());
  const Circuit r = std::move(bwd).finish();

  const Circuit expected = f.inverse();
  ASSERT_EQ(r.gates.size(), expected.gates.size());
  for (std::size_t i = 0; i < r.gates.size(); ++i) {
    EXPECT_TRUE(r.gates[i] == expected.gates[i]) << "gate " << i;
  }
}

TEST(QcSbox, UsesOnlyReversibleXKindsAndNoAncilla) {
  CircuitBuilder b({{"n", 4}, {"spare", 2}});
  qc_sbox(b, first_nibble());
  const Circuit c = std::move(b).finish();
  int three_control = 0;
  for (const Gate& g : c.gates) {
    EXPECT_TRUE(g.kind == GateKind::PauliX || g.kind == GateKind::Cnot ||
                g.kind == GateKind::Toffoli ||
                g.kind == GateKind::MultiControlledX);
    for (QubitId q : g.operands()) EXPECT_LT(q, 4u);  // never touches spare
    if (g.kind == GateKind::MultiControlledX) {
      EXPECT_EQ(g.controls.size(), 3u);
      ++three_control;
    }
  }
  // The S-box is an odd permutation of the 16 basis states while X, CNOT and
  // Toffoli on four wires are even, so an odd number of 3-control gates is
  // forced. (A search shows no equivalent sequence of length <= 11 exists.)
  EXPECT_EQ(three_control % 2, 1);
}

TEST(QcSbox, PinnedStructuralGolden) {
  CircuitBuilder b({{"n", 4}});
  qc_sbox(b, first_nibble());
  const std::string expected =
      "qubits 4\n"
      "reg n q[0],q[1],q[2],q[3]\n"
      "mcx q[0],q[1],q[3],q[2]\n"
      "ccx q[0],q[1],q[3]\n"
      "mcx q[0],q[2],q[3],q[1]\n"
      "mcx q[0],q[1],q[2],q[3]\n"
      "ccx q[0],q[2],q[3]\n"
      "ccx q[0],q[3],q[1]\n"
      "ccx q[0],q[1],q[3]\n"
      "cx q[0],q[3]\n"
      "mcx q[1],q[2],q[3],q[0]\n"
      "mcx q[0],q[2],q[3],q[1]\n"
      "ccx q[0],q[3],q[2]\n"
      "ccx q[1],q[2],q[0]\n"
      "ccx q[0],q[1],q[2]\n"
      "ccx q[1],q[3],q[0]\n"
      "ccx q[0],q[3],q[1]\n"
      "cx q[0],q[3]\n"
      "ccx q[2],q[3],q[0]\n"
      "ccx q[2],q[3],q[1]\n"
      "cx q[2],q[0]\n"
      "cx q[2],q[1]\n"
      "cx q[2],q[3]\n"
      "cx q[3],q[0]\n"
      "cx q[3],q[1]\n"
      "x q[0]\n"
      "x q[3]\n";
  EXPECT_EQ(std::move(b).finish().to_text(), expected);
}

TEST(QcMixColumns, MatchesByteMapExhaustively) {
  CircuitBuilder b({{"byte", 8}});
  const ByteWires w = ByteWires::of(b.reg("byte"));
  qc_mix_columns(b, w);
  const Circuit c = std::move(b).finish();
  for (int a = 0; a < 256; ++a) {
    const std::uint64_t bits = scatter_bits(static_cast<std::uint64_t>(a), std::span(w.q));
    const PhasedBasisState out = emulate(c, {bits, 1});
    EXPECT_EQ(pack_bits(out.bits, std::span(w.q)),
              saes::mix_columns_byte(static_cast<Byte>(a)));
  }
}

TEST(QcMixColumns, CnotOnlyAndInvertible) {
  CircuitBuilder b({{"byte", 8}});
  const ByteWires w = ByteWires::of(b.reg("byte"));
  const auto m0 = b.mark();
  qc_mix_columns(b, w);
  b.append_inverse_of_range(m0, b.mark());
  const Circuit c = std::move(b).finish();
  for (const Gate& g : c.gates) EXPECT_EQ(g.kind, GateKind::Cnot);
  for (int a = 0; a < 256; ++a) {
    const std::uint64_t bits = scatter_bits(static_cast<std::uint64_t>(a), std::span(w.q));
    EXPECT_EQ(emulate(c, {bits, 1}).bits, bits);
  }
}

// The four split variants reconstruct both output nibbles of the byte map for
// every (N0, N1) pair, each as a 4-wire affine circuit with the other nibble
// classical.
TEST(QcMcSplit, ReconstructsByteMapForAllPairs) {
  for (int n0 = 0; n0 < 16; ++n0) {
    for (int n1 = 0; n1 < 16; ++n1) {
      const Byte expected =
          saes::mix_columns_byte(saes::make_byte(static_cast<Nibble>(n0),
                                                 static_cast<Nibble>(n1)));
      struct Case {
        int out, classical;
        Nibble classical_value, wire_value, expected_nibble;
      };
      const Case cases[] = {
          {0, 0, static_cast<Nibble>(n0), static_cast<Nibble>(n1), saes::byte_hi(expected)},
          {1, 0, static_cast<Nibble>(n0), static_cast<Nibble>(n1), saes::byte_lo(expected)},
          {0, 1, static_cast<Nibble>(n1), static_cast<Nibble>(n0), saes::byte_hi(expected)},
          {1, 1, static_cast<Nibble>(n1), static_cast<Nibble>(n0), saes::byte_lo(expected)},
      };
      for (const Case& k : cases) {
        CircuitBuilder b({{"n", 4}});
        qc_mc_split(b, k.out, k.classical, first_nibble(), k.classical_value);
        const Circuit c = std::move(b).finish();
        EXPECT_EQ(run_nibble(c, k.wire_value), k.expected_nibble)
            << "MC_" << k.out << "^" << k.classical << " n0=" << n0 << " n1=" << n1;
      }
    }
  }
}

TEST(QcMcSplit, ZeroClassicalValueIsPurelyLinear) {
  for (int out = 0; out < 2; ++out) {
    for (int classical = 0; classical < 2; ++classical) {
      CircuitBuilder b({{"n", 4}});
      qc_mc_split(b, out, classical, first_nibble(), 0);
      const Circuit c = std::move(b).finish();
      for (const Gate& g : c.gates) EXPECT_EQ(g.kind, GateKind::Cnot);
    }
  }
}

TEST(QcMcSplit, EachVariantIsInvertiblePerClassicalValue) {
  for (int out = 0; out < 2; ++out) {
    for (int classical = 0; classical < 2; ++classical) {
      for (int value = 0; value < 16; ++value) {
        CircuitBuilder b({{"n", 4}});
        qc_mc_split(b, out, classical, first_nibble(), static_cast<Nibble>(value));
        const Circuit c = std::move(b).finish();
        std::set<Nibble> outputs;
        for (int n = 0; n < 16; ++n) outputs.insert(run_nibble(c, static_cast<Nibble>(n)));
        EXPECT_EQ(outputs.size(), 16u);
      }
    }
  }
}

TEST(QcMcSplitQuantum, MatchesByteMapAndPreservesHeldNibble) {
  for (int out = 0; out < 2; ++out) {
    for (int held_nibble = 0; held_nibble < 2; ++held_nibble) {
      CircuitBuilder b({{"held", 4}, {"t", 4}});
      const NibbleWires held = NibbleWires::of(b.reg("held"));
      const NibbleWires transformed = NibbleWires::of(b.reg("t"));
      qc_mc_split_quantum(b, out, held_nibble, held, transformed);
      const Circuit c = std::move(b).finish();
      for (int n0 = 0; n0 < 16; ++n0) {
        for (int n1 = 0; n1 < 16; ++n1) {
          // held carries input nibble `held_nibble`, transformed the other
          const Nibble held_value = static_cast<Nibble>(held_nibble == 0 ? n0 : n1);
          const Nibble trans_value = static_cast<Nibble>(held_nibble == 0 ? n1 : n0);
          std::uint64_t bits = scatter_bits(held_value, std::span(held.q));
          bits = scatter_bits(trans_value, std::span(transformed.q), bits);
          const PhasedBasisState result = emulate(c, {bits, 1});
          const Byte full = saes::mix_columns_byte(
              saes::make_byte(static_cast<Nibble>(n0), static_cast<Nibble>(n1)));
          const Nibble expected = out == 0 ? saes::byte_hi(full) : saes::byte_lo(full);
          EXPECT_EQ(pack_bits(result.bits, std::span(held.q)), held_value);
          EXPECT_EQ(pack_bits(result.bits, std::span(transformed.q)), expected);
        }
      }
    }
  }
}

TEST(QcMcSplitQuantum, BuiltInInverseRestoresBothRegisters) {
  std::mt19937 rng(41);
  CircuitBuilder b({{"held", 4}, {"t", 4}});
  const NibbleWires held = NibbleWires::of(b.reg("held"));
  const NibbleWires transformed = NibbleWires::of(b.reg("t"));
  const auto m0 = b.mark();
  qc_mc_split_quantum(b, 0, 0, held, transformed);
  b.append_inverse_of_range(m0, b.mark());
  const Circuit c = std::move(b).finish();
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t bits = rng() % 256;
    EXPECT_EQ(emulate(c, {bits, 1}).bits, bits);
  }
}

TEST(QcAddClassical, ZeroAddsNothingAndTwiceCancels) {
  CircuitBuilder b({{"r", 8}});
  qc_add_classical(b, b.reg("r"), 0);
  EXPECT_EQ(b.mark(), 0u);
  qc_add_classical(b, b.reg("r"), 0xA5);
  qc_add_classical(b, b.reg("r"), 0xA5);
  const Circuit c = std::move(b).finish();
  EXPECT_EQ(emulate(c, {0b11001100, 1}).bits, 0b11001100u);
}

TEST(QcAddClassical, ComplementTrickFormsAllOnes) {
  // XORing ~c after building c itself drives the register to 1...1
  const saes::Block c_value = 0x4D3C;
  CircuitBuilder b({{"r", 16}});
  qc_add_classical(b, b.reg("r"), c_value);
  qc_add_classical(b, b.reg("r"), static_cast<std::uint16_t>(~c_value));
  const Circuit circ = std::move(b).finish();
  EXPECT_EQ(emulate(circ, {0, 1}).bits, 0xFFFFu);
}

TEST(QcAddQuantum, CopiesOntoZeroAndCancelsTwice) {
  const std::vector<QubitId> src_wires{0, 1, 2, 3};
  const std::vector<QubitId> dst_wires{4, 5, 6, 7};
  CircuitBuilder b({{"src", 4}, {"dst", 4}});
  qc_add_quantum(b, b.reg("src"), b.reg("dst"));
  const Circuit c = std::move(b).finish();
  std::mt19937 rng(42);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t src = rng() % 16;
    const std::uint64_t dst = rng() % 16;
    std::uint64_t bits = scatter_bits(src, src_wires);
    bits = scatter_bits(dst, dst_wires, bits);
    const std::uint64_t out = emulate(c, {bits, 1}).bits;
    EXPECT_EQ(pack_bits(out, src_wires), src);
    EXPECT_EQ(pack_bits(out, dst_wires), src ^ dst);
  }
  EXPECT_THROW([&] {
    CircuitBuilder bad({{"a", 4}, {"b", 2}});
    qc_add_quantum(bad, bad.reg("a"), bad.reg("b"));
  }(), CircuitError);
}

TEST(QcShiftRows, FreeAndMatchesClassical) {
  std::mt19937 rng(43);
  CircuitBuilder b({{"text", 16}});
  const auto text = b.reg("text");
  const std::array<NibbleWires, 4> tn = {
      NibbleWires::of(text, 0), NibbleWires::of(text, 4),
      NibbleWires::of(text, 8), NibbleWires::of(text, 12)};
  qc_shift_rows(b, tn);
  const Circuit c = std::move(b).finish();
  EXPECT_EQ(c.stats().total_gates, 0u);

  const auto resolved = c.resolved_register("text");
  for (int i = 0; i < 100; ++i) {
    const auto v = static_cast<saes::Block>(rng());
    const std::uint64_t bits = scatter_bits(v, text);
    const std::uint64_t out_bits = emulate(c, {bits, 1}).bits;
    EXPECT_EQ(pack_bits(out_bits, resolved), saes::shift_rows(v));
  }
}

TEST(QcShiftRows, DoubleApplicationIsIdentityRelabel) {
  CircuitBuilder b({{"text", 16}});
  const auto text = b.reg("text");
  const std::array<NibbleWires, 4> tn = {
      NibbleWires::of(text, 0), NibbleWires::of(text, 4),
      NibbleWires::of(text, 8), NibbleWires::of(text, 12)};
  qc_shift_rows(b, tn);
  qc_shift_rows(b, tn);
  const Circuit c = std::move(b).finish();
  for (QubitId q = 0; q < 16; ++q) EXPECT_EQ(c.final_map[q], q);
}

TEST(QcRotate, FreeAndMatchesClassical) {
  std::mt19937 rng(44);
  CircuitBuilder b({{"byte", 8}});
  const auto byte = b.reg("byte");
  qc_rotate(b, ByteWires::of(byte));
  const Circuit c = std::move(b).finish();
  EXPECT_EQ(c.stats().total_gates, 0u);
  const auto resolved = c.resolved_register("byte");
  for (int i = 0; i < 100; ++i) {
    const auto v = static_cast<Byte>(rng());
    const std::uint64_t bits = scatter_bits(v, byte);
    EXPECT_EQ(pack_bits(emulate(c, {bits, 1}).bits, resolved), saes::rotate_byte(v));
  }
}

// Every builder composed with its structural inverse is the identity on all
// basis states of its wire set.
TEST(Builders, InverseCompositionIdentityExhaustive) {
  CircuitBuilder b({{"byte", 8}});
  const ByteWires w = ByteWires::of(b.reg("byte"));
  const auto m0 = b.mark();
  qc_sbox(b, w.hi());
  qc_mix_columns(b, w);
  qc_mc_split(b, 1, 0, w.lo(), 0xB);
  qc_rotate(b, w);
  qc_sbox_inv(b, w.lo());
  b.append_inverse_of_range(m0, b.mark());
  const Circuit c = std::move(b).finish();
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    EXPECT_EQ(emulate(c, {bits, 1}).bits, bits);
  }
  for (QubitId q = 0; q < 8; ++q) EXPECT_EQ(c.final_map[q], q);
}

}  // namespace
}  // namespace qsaes
