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

// Acceptance suite: one test per criterion, one PASS/FAIL line each.
// Criterion 8 (the 23-qubit, 201-iteration end-to-end run) is gated behind
// QSAES_RUN_LONG=1; it is a ~20-40 minute statevector simulation.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>

#include "qsaes/grover.hpp"
#include "qsaes/oracle.hpp"
#include "qsaes/saes.hpp"

namespace qsaes {
namespace {

using saes::Key;

struct Criterion {
  int number;
  std::string title;
  bool armed = true;

  void skip(const std::string& reason) {
    std::printf("[CRITERION %d] %-58s SKIPPED (%s)\n", number, title.c_str(),
                reason.c_str());
    std::fflush(stdout);
    armed = false;
  }
  ~Criterion() {
    if (!armed) return;
    std::printf("[CRITERION %d] %-58s %s\n", number, title.c_str(),
                ::testing::Test::HasFailure() ? "FAIL" : "PASS");
    std::fflush(stdout);
  }
};

double closed_form(std::uint32_t r, std::uint64_t n, std::uint64_t m) {
  const double theta =
      std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
  return std::pow(std::sin((2.0 * r + 1.0) * theta), 2);
}

AttackInstance make_instance(OracleVariant variant, std::uint16_t key_bits,
                             saes::Block p, std::initializer_list<int> leaked) {
  AttackInstance inst;
  inst.variant = variant;
  inst.plaintext = p;
  inst.ciphertext = saes::encrypt(p, Key::from_bits(key_bits));
  for (int pos : leaked) inst.leak.nibble[pos] = Key::from_bits(key_bits).nibble(pos);
  return inst;
}

// Regression key/plaintext used throughout: encrypt(0x1234, 0x5678) = 0x0AEB.
constexpr std::uint16_t kKey = 0x5678;
constexpr saes::Block kPlain = 0x1234;

TEST(Acceptance, C1QubitBudgets) {
  Criterion c{1, "qubit budgets 32 / 24 / 25 / 17 / 23 / 19 / 15 / 11"};
  const struct {
    OracleVariant variant;
    std::initializer_list<int> leaked;
    std::uint32_t expected;
  } cases[] = {
      {OracleVariant::FullBasic, {}, 32},
      {OracleVariant::B1LeakExact, {2, 3}, 24},
      {OracleVariant::Split, {0, 1}, 25},
      {OracleVariant::Split, {2, 3}, 17},
      {OracleVariant::DoubleSplit, {}, 23},
      {OracleVariant::DoubleSplit, {1}, 19},
      {OracleVariant::DoubleSplit, {1, 2}, 15},
      {OracleVariant::DoubleSplit, {0, 1, 2}, 11},
  };
  for (const auto& k : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const OracleBuild build = build_oracle(make_instance(k.variant, kKey, kPlain, k.leaked));
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    EXPECT_EQ(build.layout.total_qubits, k.expected);
    EXPECT_EQ(build.circuit.stats().qubit_count, k.expected);
    EXPECT_LT(dt.count(), 1.0);
  }
}

TEST(Acceptance, C2OracleSoundnessAndCompleteness) {
  Criterion c{2, "exhaustive phase-flip sets match brute force, all variants"};
  const auto t0 = std::chrono::steady_clock::now();
  const struct {
    OracleVariant variant;
    std::initializer_list<int> leaked;
    std::uint64_t keys;
  } cases[] = {
      {OracleVariant::FullBasic, {}, 65536},
      {OracleVariant::B1LeakExact, {2, 3}, 256},
      {OracleVariant::Split, {0, 1}, 256},
      {OracleVariant::Split, {2, 3}, 256},
      {OracleVariant::DoubleSplit, {}, 65536},
      {OracleVariant::DoubleSplit, {3}, 4096},
      {OracleVariant::DoubleSplit, {0, 2}, 256},
      {OracleVariant::DoubleSplit, {0, 1, 2}, 16},
  };
  for (const auto& k : cases) {
    const OracleVerifyReport report =
        verify_oracle(make_instance(k.variant, kKey, kPlain, k.leaked));
    EXPECT_EQ(report.keys_checked, k.keys);
    EXPECT_TRUE(report.registers_restored);
    EXPECT_TRUE(report.phase_mismatches.empty());
    EXPECT_EQ(report.flips, report.expected_solutions);
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  EXPECT_LT(dt.count(), 300.0);  // the spec's five-minute desktop budget
}

TEST(Acceptance, C3BlockEquivalences) {
  Criterion c{3, "quantum blocks equal classical maps, zero tolerance"};
  // S-box, 16 points
  {
    CircuitBuilder b({{"n", 4}});
    qc_sbox(b, NibbleWires{{0, 1, 2, 3}});
    const Circuit circuit = std::move(b).finish();
    const std::vector<QubitId> wires{0, 1, 2, 3};
    for (int n = 0; n < 16; ++n) {
      const auto out = emulate(circuit, {scatter_bits(n, wires), 1});
      EXPECT_EQ(pack_bits(out.bits, wires), saes::sbox(static_cast<saes::Nibble>(n)));
    }
  }
  // MixColumns, 256 points
  {
    CircuitBuilder b({{"byte", 8}});
    qc_mix_columns(b, ByteWires::of(b.reg("byte")));
    const Circuit circuit = std::move(b).finish();
    const std::vector<QubitId> wires{0, 1, 2, 3, 4, 5, 6, 7};
    for (int a = 0; a < 256; ++a) {
      const auto out = emulate(circuit, {scatter_bits(a, wires), 1});
      EXPECT_EQ(pack_bits(out.bits, wires),
                saes::mix_columns_byte(static_cast<saes::Byte>(a)));
    }
  }
  // four split variants: the Eq-style reconstruction over all 256 pairs
  const std::vector<QubitId> nib{0, 1, 2, 3};
  for (int n0 = 0; n0 < 16; ++n0) {
    for (int n1 = 0; n1 < 16; ++n1) {
      const saes::Byte full = saes::mix_columns_byte(
          saes::make_byte(static_cast<saes::Nibble>(n0), static_cast<saes::Nibble>(n1)));
      for (int out_nibble = 0; out_nibble < 2; ++out_nibble) {
        for (int classical = 0; classical < 2; ++classical) {
          CircuitBuilder b({{"n", 4}});
          qc_mc_split(b, out_nibble, classical, NibbleWires{{0, 1, 2, 3}},
                      static_cast<saes::Nibble>(classical == 0 ? n0 : n1));
          const Circuit circuit = std::move(b).finish();
          const int wire_value = classical == 0 ? n1 : n0;
          const auto out = emulate(circuit, {scatter_bits(wire_value, nib), 1});
          const saes::Nibble expected =
              out_nibble == 0 ? saes::byte_hi(full) : saes::byte_lo(full);
          EXPECT_EQ(pack_bits(out.bits, nib), expected);
        }
      }
    }
  }
  // fully quantum forms preserve the held nibble on all 256 pairs
  for (int out_nibble = 0; out_nibble < 2; ++out_nibble) {
    for (int held_nibble = 0; held_nibble < 2; ++held_nibble) {
      CircuitBuilder b({{"held", 4}, {"t", 4}});
      const NibbleWires held = NibbleWires::of(b.reg("held"));
      const NibbleWires transformed = NibbleWires::of(b.reg("t"));
      qc_mc_split_quantum(b, out_nibble, held_nibble, held, transformed);
      const Circuit circuit = std::move(b).finish();
      for (int n0 = 0; n0 < 16; ++n0) {
        for (int n1 = 0; n1 < 16; ++n1) {
          const int held_value = held_nibble == 0 ? n0 : n1;
          const int trans_value = held_nibble == 0 ? n1 : n0;
          std::uint64_t bits = scatter_bits(held_value, held.q);
          bits = scatter_bits(trans_value, transformed.q, bits);
          const auto out = emulate(circuit, {bits, 1});
          EXPECT_EQ(pack_bits(out.bits, held.q),
                    static_cast<std::uint64_t>(held_value));
          const saes::Byte full = saes::mix_columns_byte(saes::make_byte(
              static_cast<saes::Nibble>(n0), static_cast<saes::Nibble>(n1)));
          EXPECT_EQ(pack_bits(out.bits, transformed.q),
                    out_nibble == 0 ? saes::byte_hi(full) : saes::byte_lo(full));
        }
      }
    }
  }
}

TEST(Acceptance, C4KeyExpansionIdentities) {
  Criterion c{4, "round-key identities hold for all 65536 keys"};
  const saes::RoundConstants rc;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint32_t k = 0; k < 0x10000; ++k) {
    const saes::RoundKeys rk = saes::expand_key(Key::from_bits(k), rc);
    ASSERT_EQ(rk.b[3], rk.b[1] ^ rk.b[2]);
    ASSERT_EQ(rk.b[5], rk.b[3] ^ rk.b[4]);
    ASSERT_EQ(rk.b[5],
              rc.c1 ^ rk.b[1] ^ saes::sub_byte(saes::rotate_byte(rk.b[3])));
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  EXPECT_LT(dt.count(), 1.0);
}

TEST(Acceptance, C5GroverDynamics) {
  Criterion c{5, "success probabilities match sin^2((2r+1) asin sqrt(M/N))"};
  // 11-qubit attack: N = 16, M = 1, r = 3
  {
    const AttackInstance inst =
        make_instance(OracleVariant::DoubleSplit, kKey, kPlain, {0, 1, 2});
    const auto curve = success_curve(inst, 3);
    for (const auto& [r, prob] : curve) {
      EXPECT_NEAR(prob, closed_form(r, 16, 1), 1e-9);
    }
    const AttackResult result = run_attack(inst, 4096, 2026);
    const double p = closed_form(3, 16, 1);
    const double sigma = std::sqrt(p * (1 - p) / 4096.0);
    EXPECT_NEAR(result.empirical_success, p, 3 * sigma);
    EXPECT_TRUE(result.verified);
  }
  // 15-qubit attack: N = 256, M = 1, r = 12
  {
    const AttackInstance inst =
        make_instance(OracleVariant::DoubleSplit, kKey, kPlain, {0, 1});
    const auto curve = success_curve(inst, 12);
    EXPECT_NEAR(curve.back().second, closed_form(12, 256, 1), 1e-9);
    const AttackResult result = run_attack(inst, 4096, 2027);
    const double p = closed_form(12, 256, 1);
    EXPECT_GT(result.empirical_success, p - 3 * std::sqrt(p * (1 - p) / 4096.0) - 1e-3);
    EXPECT_TRUE(result.verified);
  }
}

TEST(Acceptance, C6IterationCounts) {
  Criterion c{6, "iteration plan: 201 / 12 / 3 for 16 / 8 / 4 search qubits"};
  EXPECT_EQ(make_plan(16, 1).iterations, 201u);
  EXPECT_EQ(make_plan(8, 1).iterations, 12u);
  EXPECT_EQ(make_plan(4, 1).iterations, 3u);
  // and through real instances
  EXPECT_EQ(plan(make_instance(OracleVariant::FullBasic, 0xA5CD, 0x4D3C, {}))
                .iterations,
            201u);
  EXPECT_EQ(plan(make_instance(OracleVariant::B1LeakExact, kKey, kPlain, {2, 3}))
                .iterations,
            12u);
  EXPECT_EQ(
      plan(make_instance(OracleVariant::DoubleSplit, kKey, kPlain, {0, 1, 2}))
          .iterations,
      3u);
}

TEST(Acceptance, C7SboxXorCollisionProfile) {
  Criterion c{7, "x ^ S(x) collision profile is {4, 2, 2}"};
  std::map<saes::Nibble, int> hits;
  for (int x = 0; x < 16; ++x) {
    hits[static_cast<saes::Nibble>(x ^ saes::sbox(static_cast<saes::Nibble>(x)))]++;
  }
  std::map<int, int> profile;
  for (const auto& [value, count] : hits) profile[count]++;
  EXPECT_EQ(profile[4], 1);
  EXPECT_EQ(profile[2], 2);
}

TEST(Acceptance, C8LongRunNoLeakAttack) {
  Criterion c{8, "23-qubit no-leak attack reaches >= 0.99 at r = 201"};
  if (std::getenv("QSAES_RUN_LONG") == nullptr) {
    c.skip("set QSAES_RUN_LONG=1; expected runtime tens of minutes");
    GTEST_SKIP() << "23-qubit, 201-iteration statevector run is opt-in";
  }
  // M = 1 over the full space so the textbook iteration count applies.
  const AttackInstance inst =
      make_instance(OracleVariant::DoubleSplit, 0xA5CD, 0x4D3C, {});
  const GroverPlan p = plan(inst);
  ASSERT_EQ(p.solution_count, 1u);
  ASSERT_EQ(p.iterations, 201u);
  const auto curve = success_curve(inst, 201);
  EXPECT_GE(curve.back().second, 0.99);
  EXPECT_NEAR(curve.back().second, closed_form(201, 65536, 1), 1e-9);
}

TEST(Acceptance, C9BackendAgreement) {
  Criterion c{9, "emulator and statevector agree exactly per oracle variant"};
  // The 32-qubit full oracle exceeds the statevector guard (that gap is the
  // point of the paper); agreement is checked on every simulable variant.
  // The 24-qubit leg defaults to 10 inputs and runs all 100 under
  // QSAES_RUN_LONG=1.
  const bool long_run = std::getenv("QSAES_RUN_LONG") != nullptr;
  const struct {
    OracleVariant variant;
    std::initializer_list<int> leaked;
    int inputs;
  } legs[] = {
      {OracleVariant::DoubleSplit, {0, 1, 2}, 100},
      {OracleVariant::Split, {2, 3}, 100},
      {OracleVariant::B1LeakExact, {2, 3}, long_run ? 100 : 10},
  };
  std::mt19937_64 rng(99);
  for (const auto& leg : legs) {
    const AttackInstance inst = make_instance(leg.variant, kKey, kPlain, leg.leaked);
    const OracleBuild build = build_oracle(inst);
    const ReversibleEmulator em(build.circuit);
    for (int i = 0; i < leg.inputs; ++i) {
      const std::uint64_t bits =
          rng() & ((std::uint64_t{1} << build.circuit.qubit_count) - 1);
      const PhasedBasisState expected = em.run({bits, 1});

      StateVector s(build.circuit.qubit_count, bits);
      s.run(build.circuit);
      ASSERT_EQ(std::abs(s.amplitudes()[expected.bits].real() -
                         static_cast<double>(expected.phase)) < 1e-12,
                true)
          << oracle_variant_name(leg.variant) << " input " << i;
      ASSERT_LT(std::abs(s.amplitudes()[expected.bits].imag()), 1e-12);
    }
  }
}

}  // namespace
}  // namespace qsaes
