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

// Builders for the four Grover oracles:
//
//   FullBasic    32 qubits  16 key + 16 text
//   B1LeakExact  24 qubits   8 key + 16 text        (B1 leaked)
//   Split        25 qubits   8 key + 16 text + 1 anc (B0 leaked)
//                17 qubits   8 key +  8 text + 1 anc (B1 leaked)
//   DoubleSplit  23-4L qubits  4(4-L) key + 4 text + 3 anc, L leaked nibbles
//
// Each oracle's net action is a phase flip on exactly the key-register basis
// components whose merged key encrypts the plaintext to the ciphertext, with
// every qubit restored: the builders emit a forward pass, one multi-controlled
// Z, and the structural inverse of the forward pass.
//
// Round-key material is never stored in extra registers. Byte oracles follow
// the sequential in-register expansion (B2 then B3 in the key register, B4/B5
// added to the text through the B3^RSC / B3 / B2 chain, which sidesteps the
// non-invertible x^S(x) map); nibble oracles synthesize every round-key nibble
// from the recursive expansion
//   B2^0 = C0^0 ^ B0^0 ^ S(B1^1)     B2^1 = C0^1 ^ B0^1 ^ S(B1^0)
//   B3   = B1 ^ B2                   B4 = C1 ^ B2 ^ S(R(B3))   B5 = B3 ^ B4
// materializing S(.) arguments in place on key wires and uncomputing them.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsaes/blocks.hpp"
#include "qsaes/circuit.hpp"
#include "qsaes/emulator.hpp"
#include "qsaes/saes.hpp"

namespace qsaes {

enum class OracleVariant { FullBasic, B1LeakExact, Split, DoubleSplit };

inline std::string_view oracle_variant_name(OracleVariant v) {
  switch (v) {
    case OracleVariant::FullBasic: return "full";
    case OracleVariant::B1LeakExact: return "b1-leak";
    case OracleVariant::Split: return "split";
    case OracleVariant::DoubleSplit: return "double-split";
  }
  return "?";
}

struct AttackInstance {
  saes::Block plaintext = 0;
  saes::Block ciphertext = 0;
  saes::LeakConfig leak;
  OracleVariant variant = OracleVariant::DoubleSplit;
};

struct OracleLayout {
  std::vector<QubitId> key_register;  // searched wires, msb first
  std::vector<int> searched_positions;
  std::vector<QubitId> ancillas;
  std::uint32_t total_qubits = 0;
};

struct OracleBuild {
  Circuit circuit;
  OracleLayout layout;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace oracle_detail {

using saes::Nibble;

// Wires of each key nibble position (0..3 = B0^0, B0^1, B1^0, B1^1);
// leaked positions have no wires.
struct KeyWires {
  std::array<std::optional<NibbleWires>, 4> nib;

  const NibbleWires& at(int pos) const {
    if (!nib[pos]) throw OracleError("key nibble is classical");
    return *nib[pos];
  }
};

// One expanded-key nibble as a XOR of: a round-constant part, key nibbles,
// S(key nibble) terms and S(B3 half) terms.
struct RoundKeyExpr {
  Nibble constant = 0;
  std::vector<int> affine;   // key nibble positions
  std::vector<int> sboxed;   // positions taken through the S-box
  std::vector<int> b3_half;  // 0 -> S(B3^0), 1 -> S(B3^1)
};

// Index order: B2^0, B2^1, B3^0, B3^1, B4^0, B4^1, B5^0, B5^1.
enum RkIndex { kB2Hi, kB2Lo, kB3Hi, kB3Lo, kB4Hi, kB4Lo, kB5Hi, kB5Lo };

inline RoundKeyExpr round_key_expr(int idx, const saes::RoundConstants& rc) {
  const Nibble c0h = saes::byte_hi(rc.c0), c0l = saes::byte_lo(rc.c0);
  const Nibble c1h = saes::byte_hi(rc.c1), c1l = saes::byte_lo(rc.c1);
  switch (idx) {
    case kB2Hi: return {c0h, {0}, {3}, {}};
    case kB2Lo: return {c0l, {1}, {2}, {}};
    case kB3Hi: return {c0h, {0, 2}, {3}, {}};
    case kB3Lo: return {c0l, {1, 3}, {2}, {}};
    case kB4Hi: return {static_cast<Nibble>(c1h ^ c0h), {0}, {3}, {1}};
    case kB4Lo: return {static_cast<Nibble>(c1l ^ c0l), {1}, {2}, {0}};
    case kB5Hi: return {c1h, {2}, {}, {1}};
    case kB5Lo: return {c1l, {3}, {}, {0}};
  }
  throw OracleError("bad round key index");
}

// B3^half = C0^half ^ (affine nibbles) ^ S(sbox_arg nibble).
struct B3Parts {
  Nibble constant;
  std::array<int, 2> affine;  // host preference order: own B1 nibble first
  int sbox_arg;
};

inline B3Parts b3_parts(int half, const saes::RoundConstants& rc) {
  if (half == 0) return {saes::byte_hi(rc.c0), {2, 0}, 3};
  return {saes::byte_lo(rc.c0), {3, 1}, 2};
}

class NibbleOracleEmitter {
 public:
  NibbleOracleEmitter(CircuitBuilder& b, const KeyWires& kw,
                      const saes::LeakConfig& leak, const saes::RoundConstants& rc)
      : b_(b), kw_(kw), leak_(leak), rc_(rc) {}

  bool leaked(int pos) const { return leak_.is_leaked(pos); }
  Nibble leak_value(int pos) const { return *leak_.nibble[pos]; }

  // target ^= S(B3^half), uncomputing the in-place materialization.
  void add_sbox_of_b3(int half, const NibbleWires& target) {
    const B3Parts parts = b3_parts(half, rc_);
    Nibble classical = parts.constant;
    std::vector<int> hosts;
    for (int pos : parts.affine) {
      if (leaked(pos)) {
        classical ^= leak_value(pos);
      } else {
        hosts.push_back(pos);
      }
    }
    const bool arg_quantum = !leaked(parts.sbox_arg);
    if (hosts.empty() && !arg_quantum) {
      const Nibble b3_value =
          static_cast<Nibble>(classical ^ saes::sbox(leak_value(parts.sbox_arg)));
      qc_add_classical(b_, target.q, saes::sbox(b3_value));
      return;
    }
    const auto m1 = b_.mark();
    if (!hosts.empty()) {
      const int host = hosts.front();
      for (int pos : hosts) {
        if (pos != host) qc_add_quantum(b_, kw_.at(pos), kw_.at(host));
      }
      if (arg_quantum) {
        qc_sbox(b_, kw_.at(parts.sbox_arg));
        qc_add_quantum(b_, kw_.at(parts.sbox_arg), kw_.at(host));
        qc_sbox_inv(b_, kw_.at(parts.sbox_arg));
      } else {
        classical ^= saes::sbox(leak_value(parts.sbox_arg));
      }
      qc_add_classical(b_, kw_.at(host).q, classical);
      qc_sbox(b_, kw_.at(host));  // host now carries S(B3^half)
      const auto m2 = b_.mark();
      qc_add_quantum(b_, kw_.at(host), target);
      b_.append_inverse_of_range(m1, m2);
    } else {
      // only the S-box argument is quantum: host on its own wires
      const int host = parts.sbox_arg;
      qc_sbox(b_, kw_.at(host));
      qc_add_classical(b_, kw_.at(host).q, classical);
      qc_sbox(b_, kw_.at(host));
      const auto m2 = b_.mark();
      qc_add_quantum(b_, kw_.at(host), target);
      b_.append_inverse_of_range(m1, m2);
    }
  }

  // target ^= round-key nibble `idx`.
  void add_round_key_nibble(int idx, const NibbleWires& target) {
    const RoundKeyExpr expr = round_key_expr(idx, rc_);
    Nibble classical = expr.constant;
    for (int pos : expr.affine) {
      if (leaked(pos)) {
        classical ^= leak_value(pos);
      } else {
        qc_add_quantum(b_, kw_.at(pos), target);
      }
    }
    for (int pos : expr.sboxed) {
      if (leaked(pos)) {
        classical ^= saes::sbox(leak_value(pos));
      } else {
        qc_sbox(b_, kw_.at(pos));
        qc_add_quantum(b_, kw_.at(pos), target);
        qc_sbox_inv(b_, kw_.at(pos));
      }
    }
    for (int half : expr.b3_half) add_sbox_of_b3(half, target);
    qc_add_classical(b_, target.q, classical);
  }

 private:
  CircuitBuilder& b_;
  const KeyWires& kw_;
  const saes::LeakConfig& leak_;
  const saes::RoundConstants& rc_;
};

}  // namespace oracle_detail

// ---------------------------------------------------------------------------
// FullBasic: no leak, 16 key + 16 text qubits. Round keys are expanded in the
// key register itself (R and ShiftRows are free relabelings); the ciphertext
// complement is XORed in so a match leaves the text register at |1...1>.
// Returns the forward pass only; callers add the phase gate and the inverse.

inline std::vector<QubitId> build_forward_full(const AttackInstance& inst,
                                               const saes::RoundConstants& rc,
                                               CircuitBuilder& b) {
  if (inst.variant != OracleVariant::FullBasic) {
    throw OracleError("build_forward_full requires the full variant");
  }
  const auto key = b.reg("key");
  const auto text = b.reg("text");
  const std::array<NibbleWires, 4> tn = {
      NibbleWires::of(text, 0), NibbleWires::of(text, 4),
      NibbleWires::of(text, 8), NibbleWires::of(text, 12)};
  const std::array<NibbleWires, 4> kn = {
      NibbleWires::of(key, 0), NibbleWires::of(key, 4),
      NibbleWires::of(key, 8), NibbleWires::of(key, 12)};
  const ByteWires key_b0 = ByteWires::of(key, 0);
  const ByteWires key_b1 = ByteWires::of(key, 8);

  auto expand_round_key = [&](saes::Byte round_constant) {
    // (hi byte, lo byte) -> (C ^ hi ^ S(R(lo)), lo), then lo ^= hi.
    qc_rotate(b, key_b1);
    qc_sbox(b, kn[2]);
    qc_sbox(b, kn[3]);
    qc_add_quantum(b, key_b1.q, key_b0.q);
    qc_add_classical(b, key_b0.q, round_constant);
    qc_sbox_inv(b, kn[2]);
    qc_sbox_inv(b, kn[3]);
    qc_rotate(b, key_b1);
    qc_add_quantum(b, key_b0.q, key_b1.q);
  };

  qc_add_classical(b, text, inst.plaintext);
  qc_add_quantum(b, key, text);
  for (const auto& w : tn) qc_sbox(b, w);
  qc_shift_rows(b, tn);
  qc_mix_columns(b, ByteWires::of(text, 0));
  qc_mix_columns(b, ByteWires::of(text, 8));
  expand_round_key(rc.c0);  // key register: (B2, B3)
  qc_add_quantum(b, key, text);
  for (const auto& w : tn) qc_sbox(b, w);
  qc_shift_rows(b, tn);
  expand_round_key(rc.c1);  // key register: (B4, B5)
  qc_add_quantum(b, key, text);
  qc_add_classical(b, text, static_cast<std::uint16_t>(~inst.ciphertext));
  return {text.begin(), text.end()};
}

// ---------------------------------------------------------------------------
// B1LeakExact (Table-1 flow): B1 classical, key register holds B0. B2 and B3
// are generated sequentially in the key register; the final round keys are
// added through the B3^RSC / B3 / B2 chain so B4 itself is never materialized.

inline std::vector<QubitId> build_b1_leak(const AttackInstance& inst,
                                          const saes::RoundConstants& rc,
                                          CircuitBuilder& b) {
  if (!inst.leak.is_leaked(2) || !inst.leak.is_leaked(3) ||
      inst.leak.leaked_count() != 2) {
    throw OracleError("b1-leak oracle requires exactly the full B1 byte leaked");
  }
  const saes::Byte b1v =
      saes::make_byte(*inst.leak.nibble[2], *inst.leak.nibble[3]);
  const auto key = b.reg("key");
  const auto text = b.reg("text");
  const std::array<NibbleWires, 4> tn = {
      NibbleWires::of(text, 0), NibbleWires::of(text, 4),
      NibbleWires::of(text, 8), NibbleWires::of(text, 12)};
  const ByteWires key_byte = ByteWires::of(key, 0);
  const NibbleWires khi = key_byte.hi(), klo = key_byte.lo();

  qc_add_classical(b, text, inst.plaintext);
  // AddKey(B0 B1): B0 from the key register, B1 classically.
  qc_add_quantum(b, key, text.subspan(0, 8));
  qc_add_classical(b, text.subspan(8, 8), b1v);
  for (const auto& w : tn) qc_sbox(b, w);
  qc_shift_rows(b, tn);
  qc_mix_columns(b, ByteWires::of(text, 0));
  qc_mix_columns(b, ByteWires::of(text, 8));
  // key register: B0 -> B2 (classical offset), add to positions 0,1
  qc_add_classical(b, key, static_cast<saes::Byte>(
                               rc.c0 ^ saes::sub_byte(saes::rotate_byte(b1v))));
  qc_add_quantum(b, key, text.subspan(0, 8));
  // key register: B2 -> B3 = B2 ^ B1, add to positions 2,3
  qc_add_classical(b, key, b1v);
  qc_add_quantum(b, key, text.subspan(8, 8));
  for (const auto& w : tn) qc_sbox(b, w);
  qc_shift_rows(b, tn);
  // key register: B3 -> B3^RSC = C1 ^ S(R(B3)); B4 = B3^RSC ^ B2 and
  // B5 = B3^RSC ^ B2 ^ B3, so add B3^RSC to all four nibbles first.
  qc_rotate(b, key_byte);
  qc_sbox(b, khi);
  qc_sbox(b, klo);
  qc_add_classical(b, key, rc.c1);
  for (int i = 0; i < 4; ++i) qc_add_quantum(b, i % 2 ? klo : khi, tn[i]);
  // restore B3, add it to positions 2,3
  qc_add_classical(b, key, rc.c1);
  qc_sbox_inv(b, khi);
  qc_sbox_inv(b, klo);
  qc_rotate(b, key_byte);
  for (int i = 2; i < 4; ++i) qc_add_quantum(b, i % 2 ? klo : khi, tn[i]);
  // key register: B3 -> B2 = B3 ^ B1, add to all four nibbles
  qc_add_classical(b, key, b1v);
  for (int i = 0; i < 4; ++i) qc_add_quantum(b, i % 2 ? klo : khi, tn[i]);
  qc_add_classical(b, text, static_cast<std::uint16_t>(~inst.ciphertext));
  return {text.begin(), text.end()};
}

// ---------------------------------------------------------------------------
// Split (Table-2 flow): one key byte leaked. Round 1 + round 2.1 generate
// ciphertext nibbles 0 and 1, a multi-controlled X writes the comparison
// into ancilla X0, data recovery rewinds to the MixColumns arguments, round
// 2.2 generates nibbles 2 and 3, and the final CZ spans the 8 live text
// qubits plus X0.

inline std::vector<QubitId> build_split(const AttackInstance& inst,
                                        const saes::RoundConstants& rc,
                                        CircuitBuilder& b) {
  using saes::block_nibble;
  const bool b0_leaked = inst.leak.is_leaked(0) && inst.leak.is_leaked(1);
  const bool b1_leaked = inst.leak.is_leaked(2) && inst.leak.is_leaked(3);
  if (inst.leak.leaked_count() != 2 || (!b0_leaked && !b1_leaked)) {
    throw OracleError("split oracle requires exactly one full key byte leaked");
  }

  const auto key = b.reg("key");
  const auto text = b.reg("text");
  const QubitId anc = b.reg("anc", 0);
  oracle_detail::KeyWires kw;
  if (b0_leaked) {
    kw.nib[2] = NibbleWires::of(key, 0);
    kw.nib[3] = NibbleWires::of(key, 4);
  } else {
    kw.nib[0] = NibbleWires::of(key, 0);
    kw.nib[1] = NibbleWires::of(key, 4);
  }
  oracle_detail::NibbleOracleEmitter keys(b, kw, inst.leak, rc);

  const auto p = inst.plaintext;
  const auto c = inst.ciphertext;
  // Live wire pair (first, second) and, per pair, the split-MC call and the
  // round-key nibble schedule (derived in the module comment's algebra).
  NibbleWires live0, live1;

  if (b0_leaked) {
    // 16 text wires; positions after ShiftRows: [u0, q3, q2, u1] with
    // u0 = S(B0^0 ^ N0), u1 = S(B0^1 ^ N1) classical.
    const saes::Nibble u0 =
        saes::sbox(*inst.leak.nibble[0] ^ block_nibble(p, 0));
    const saes::Nibble u1 =
        saes::sbox(*inst.leak.nibble[1] ^ block_nibble(p, 1));
    const std::array<NibbleWires, 4> tn = {
        NibbleWires::of(text, 0), NibbleWires::of(text, 4),
        NibbleWires::of(text, 8), NibbleWires::of(text, 12)};
    qc_add_classical(b, text, p);
    qc_add_classical(b, tn[0].q, *inst.leak.nibble[0]);
    qc_add_classical(b, tn[1].q, *inst.leak.nibble[1]);
    qc_add_quantum(b, kw.at(2), tn[2]);
    qc_add_quantum(b, kw.at(3), tn[3]);
    for (const auto& w : tn) qc_sbox(b, w);
    qc_shift_rows(b, tn);
    live0 = tn[1];  // holds q3 = S(B1^1 ^ N3)
    live1 = tn[2];  // holds q2 = S(B1^0 ^ N2)

    const auto recovery_mark = b.mark();
    qc_mc_split(b, 0, 0, live0, u0);  // MC_0^0(u0): N0*
    qc_mc_split(b, 1, 1, live1, u1);  // MC_1^1(u1): N3*
    keys.add_round_key_nibble(oracle_detail::kB2Hi, live0);
    keys.add_round_key_nibble(oracle_detail::kB3Lo, live1);
    qc_sbox(b, live0);
    qc_sbox(b, live1);
    keys.add_round_key_nibble(oracle_detail::kB4Hi, live0);
    keys.add_round_key_nibble(oracle_detail::kB4Lo, live1);
    qc_add_classical(b, live0.q, static_cast<saes::Nibble>(~block_nibble(c, 0)));
    qc_add_classical(b, live1.q, static_cast<saes::Nibble>(~block_nibble(c, 1)));
    const auto compare_mark = b.mark();
    std::vector<QubitId> controls(live0.q.begin(), live0.q.end());
    controls.insert(controls.end(), live1.q.begin(), live1.q.end());
    b.mcx(controls, anc);
    b.append_inverse_of_range(recovery_mark, compare_mark);  // data recovery

    qc_mc_split(b, 1, 0, live0, u0);  // MC_1^0(u0): N1*
    qc_mc_split(b, 0, 1, live1, u1);  // MC_0^1(u1): N2*
    keys.add_round_key_nibble(oracle_detail::kB2Lo, live0);
    keys.add_round_key_nibble(oracle_detail::kB3Hi, live1);
    qc_sbox(b, live0);
    qc_sbox(b, live1);
    keys.add_round_key_nibble(oracle_detail::kB5Lo, live0);
    keys.add_round_key_nibble(oracle_detail::kB5Hi, live1);
    qc_add_classical(b, live0.q, static_cast<saes::Nibble>(~block_nibble(c, 3)));
    qc_add_classical(b, live1.q, static_cast<saes::Nibble>(~block_nibble(c, 2)));
  } else {
    // 8 text wires; quantum round-1 nibbles q0 = S(B0^0 ^ N0) and
    // q1 = S(B0^1 ^ N1); v3 = S(B1^1 ^ N3), v2 = S(B1^0 ^ N2) classical.
    const saes::Nibble v3 =
        saes::sbox(*inst.leak.nibble[3] ^ block_nibble(p, 3));
    const saes::Nibble v2 =
        saes::sbox(*inst.leak.nibble[2] ^ block_nibble(p, 2));
    live0 = NibbleWires::of(text, 0);
    live1 = NibbleWires::of(text, 4);
    qc_add_classical(b, live0.q, block_nibble(p, 0));
    qc_add_classical(b, live1.q, block_nibble(p, 1));
    qc_add_quantum(b, kw.at(0), live0);
    qc_add_quantum(b, kw.at(1), live1);
    qc_sbox(b, live0);
    qc_sbox(b, live1);

    const auto recovery_mark = b.mark();
    qc_mc_split(b, 0, 1, live0, v3);  // MC_0^1(v3): N0*
    qc_mc_split(b, 1, 0, live1, v2);  // MC_1^0(v2): N3*
    keys.add_round_key_nibble(oracle_detail::kB2Hi, live0);
    keys.add_round_key_nibble(oracle_detail::kB3Lo, live1);
    qc_sbox(b, live0);
    qc_sbox(b, live1);
    keys.add_round_key_nibble(oracle_detail::kB4Hi, live0);
    keys.add_round_key_nibble(oracle_detail::kB4Lo, live1);
    qc_add_classical(b, live0.q, static_cast<saes::Nibble>(~block_nibble(c, 0)));
    qc_add_classical(b, live1.q, static_cast<saes::Nibble>(~block_nibble(c, 1)));
    const auto compare_mark = b.mark();
    std::vector<QubitId> controls(live0.q.begin(), live0.q.end());
    controls.insert(controls.end(), live1.q.begin(), live1.q.end());
    b.mcx(controls, anc);
    b.append_inverse_of_range(recovery_mark, compare_mark);

    qc_mc_split(b, 1, 1, live0, v3);  // MC_1^1(v3): N1*
    qc_mc_split(b, 0, 0, live1, v2);  // MC_0^0(v2): N2*
    keys.add_round_key_nibble(oracle_detail::kB2Lo, live0);
    keys.add_round_key_nibble(oracle_detail::kB3Hi, live1);
    qc_sbox(b, live0);
    qc_sbox(b, live1);
    keys.add_round_key_nibble(oracle_detail::kB5Lo, live0);
    keys.add_round_key_nibble(oracle_detail::kB5Hi, live1);
    qc_add_classical(b, live0.q, static_cast<saes::Nibble>(~block_nibble(c, 3)));
    qc_add_classical(b, live1.q, static_cast<saes::Nibble>(~block_nibble(c, 2)));
  }

  std::vector<QubitId> phase(live0.q.begin(), live0.q.end());
  phase.insert(phase.end(), live1.q.begin(), live1.q.end());
  phase.push_back(anc);
  return phase;
}

// ---------------------------------------------------------------------------
// DoubleSplit (Table-3 flow): eight subrounds generate the four ciphertext
// nibbles one at a time in a single 4-qubit text workspace. MixColumns
// arguments are formed on the key wires themselves (AddTxt + S), transformed
// with a split-MC form (fully quantum, or classical-parameter when the held
// nibble is leaked), copied out, and uncomputed. Comparisons for nibbles
// 0, 2, 3 write ancillas X0, X2, X3; nibble 1 stays live for the final CZ.

inline std::vector<QubitId> build_double_split(const AttackInstance& inst,
                                               const saes::RoundConstants& rc,
                                               CircuitBuilder& b) {
  using saes::block_nibble;
  const auto text = b.reg("text");
  const auto anc = b.reg("anc");
  const NibbleWires ws = NibbleWires::of(text, 0);

  oracle_detail::KeyWires kw;
  {
    const auto searched = inst.leak.searched_positions();
    for (std::size_t i = 0; i < searched.size(); ++i) {
      kw.nib[searched[i]] = NibbleWires::of(b.reg("key"), 4 * i);
    }
  }
  oracle_detail::NibbleOracleEmitter keys(b, kw, inst.leak, rc);

  // Column operands after round-1 ShiftRows: column 0 = (K0,N0 | K3,N3),
  // column 1 = (K2,N2 | K1,N1). Ciphertext nibble -> (column, output part,
  // round-1 key nibble, round-2 key nibble).
  struct SubroundPlan {
    int pos_a, pos_b;  // key nibble positions forming the column (hi, lo)
    int out_part;
    int rk1, rk2;
  };
  const auto plan_for = [&](int j) -> SubroundPlan {
    switch (j) {
      case 0: return {0, 3, 0, oracle_detail::kB2Hi, oracle_detail::kB4Hi};
      case 1: return {2, 1, 1, oracle_detail::kB3Lo, oracle_detail::kB4Lo};
      case 2: return {2, 1, 0, oracle_detail::kB3Hi, oracle_detail::kB5Hi};
      case 3: return {0, 3, 1, oracle_detail::kB2Lo, oracle_detail::kB5Lo};
    }
    throw OracleError("bad ciphertext nibble");
  };
  // Round-1 AddKey is positional, so key nibble `pos` meets text nibble `pos`.
  const auto pnib = [&](int pos) { return block_nibble(inst.plaintext, pos); };

  auto compute_nibble = [&](int j) {
    const SubroundPlan plan = plan_for(j);
    const bool a_quantum = !inst.leak.is_leaked(plan.pos_a);
    const bool b_quantum = !inst.leak.is_leaked(plan.pos_b);
    const auto x_classical = [&](int pos) {
      return saes::sbox(*inst.leak.nibble[pos] ^ pnib(pos));
    };
    if (!a_quantum && !b_quantum) {
      const saes::Nibble xa = x_classical(plan.pos_a);
      const saes::Nibble xb = x_classical(plan.pos_b);
      const saes::Nibble out =
          plan.out_part == 0
              ? static_cast<saes::Nibble>(xa ^ saes::gf16_mul(4, xb))
              : static_cast<saes::Nibble>(saes::gf16_mul(4, xa) ^ xb);
      qc_add_classical(b, ws.q, out);
    } else {
      const auto m1 = b.mark();
      if (a_quantum) {
        qc_add_classical(b, kw.at(plan.pos_a).q, pnib(plan.pos_a));
        qc_sbox(b, kw.at(plan.pos_a));
      }
      if (b_quantum) {
        qc_add_classical(b, kw.at(plan.pos_b).q, pnib(plan.pos_b));
        qc_sbox(b, kw.at(plan.pos_b));
      }
      int host_pos;
      if (a_quantum && b_quantum) {
        host_pos = plan.out_part == 0 ? plan.pos_b : plan.pos_a;
        const int held_pos = host_pos == plan.pos_b ? plan.pos_a : plan.pos_b;
        const int held_nibble = held_pos == plan.pos_a ? 0 : 1;
        qc_mc_split_quantum(b, plan.out_part, held_nibble, kw.at(held_pos),
                            kw.at(host_pos));
      } else {
        host_pos = a_quantum ? plan.pos_a : plan.pos_b;
        const int classical_nibble = a_quantum ? 1 : 0;
        const saes::Nibble value =
            x_classical(a_quantum ? plan.pos_b : plan.pos_a);
        qc_mc_split(b, plan.out_part, classical_nibble, kw.at(host_pos), value);
      }
      const auto m2 = b.mark();
      qc_add_quantum(b, kw.at(host_pos), ws);
      b.append_inverse_of_range(m1, m2);  // restore the key nibbles
    }
    keys.add_round_key_nibble(plan.rk1, ws);
    qc_sbox(b, ws);
    keys.add_round_key_nibble(plan.rk2, ws);
    qc_add_classical(
        b, ws.q, static_cast<saes::Nibble>(~block_nibble(inst.ciphertext, j)));
  };

  // Subround order and ancilla assignment follow the paper's table:
  // nibble 0 -> X0, nibble 3 -> X3, nibble 2 -> X2, nibble 1 stays live.
  const std::array<std::pair<int, int>, 3> compared = {
      {{0, 0}, {3, 2}, {2, 1}}};
  for (const auto& [j, anc_index] : compared) {
    const auto subround_mark = b.mark();
    compute_nibble(j);
    const auto compare_mark = b.mark();
    b.mcx({ws.q.begin(), ws.q.end()}, anc[anc_index]);
    b.append_inverse_of_range(subround_mark, compare_mark);
  }
  compute_nibble(1);

  std::vector<QubitId> phase(ws.q.begin(), ws.q.end());
  phase.insert(phase.end(), anc.begin(), anc.end());
  return phase;
}

// ---------------------------------------------------------------------------

inline OracleLayout plan_layout(const AttackInstance& inst) {
  OracleLayout layout;
  layout.searched_positions = inst.leak.searched_positions();
  const int searched = static_cast<int>(layout.searched_positions.size());
  switch (inst.variant) {
    case OracleVariant::FullBasic:
      if (searched != 4) {
        throw OracleError("full oracle takes no leak");
      }
      layout.total_qubits = 32;
      break;
    case OracleVariant::B1LeakExact:
      if (inst.leak.leaked_count() != 2 || !inst.leak.is_leaked(2) ||
          !inst.leak.is_leaked(3)) {
        throw OracleError("b1-leak oracle requires exactly the full B1 byte leaked");
      }
      layout.total_qubits = 24;
      break;
    case OracleVariant::Split: {
      const bool b0 = inst.leak.is_leaked(0) && inst.leak.is_leaked(1);
      const bool b1 = inst.leak.is_leaked(2) && inst.leak.is_leaked(3);
      if (inst.leak.leaked_count() != 2 || (!b0 && !b1)) {
        throw OracleError("split oracle requires exactly one full key byte leaked");
      }
      layout.total_qubits = b0 ? 25 : 17;
      break;
    }
    case OracleVariant::DoubleSplit:
      layout.total_qubits = static_cast<std::uint32_t>(4 * searched + 7);
      break;
  }
  return layout;
}

inline std::vector<std::pair<std::string, std::uint32_t>> register_spec(
    const AttackInstance& inst) {
  const int searched = 4 - inst.leak.leaked_count();
  switch (inst.variant) {
    case OracleVariant::FullBasic:
      return {{"key", 16}, {"text", 16}};
    case OracleVariant::B1LeakExact:
      return {{"key", 8}, {"text", 16}};
    case OracleVariant::Split:
      if (inst.leak.is_leaked(0)) return {{"key", 8}, {"text", 16}, {"anc", 1}};
      return {{"key", 8}, {"text", 8}, {"anc", 1}};
    case OracleVariant::DoubleSplit:
      if (searched == 0) return {{"text", 4}, {"anc", 3}};
      return {{"key", static_cast<std::uint32_t>(4 * searched)},
              {"text", 4},
              {"anc", 3}};
  }
  throw OracleError("bad variant");
}

// Builds the complete oracle: forward pass, multi-controlled Z, structural
// inverse of the forward pass. For every basis key assignment kappa:
//   O |kappa>|work init> = s |kappa>|work init>,
// s = -1 iff merge(leak, kappa) encrypts the plaintext to the ciphertext.
inline OracleBuild build_oracle(const AttackInstance& inst,
                                const saes::RoundConstants& rc = {}) {
  OracleLayout layout = plan_layout(inst);
  CircuitBuilder b(register_spec(inst));

  const auto forward_mark = b.mark();
  std::vector<QubitId> phase;
  switch (inst.variant) {
    case OracleVariant::FullBasic:
      phase = build_forward_full(inst, rc, b);
      break;
    case OracleVariant::B1LeakExact:
      phase = build_b1_leak(inst, rc, b);
      break;
    case OracleVariant::Split:
      phase = build_split(inst, rc, b);
      break;
    case OracleVariant::DoubleSplit:
      phase = build_double_split(inst, rc, b);
      break;
  }
  const auto phase_mark = b.mark();
  b.mcz(phase);
  b.append_inverse_of_range(forward_mark, phase_mark);

  // Key register wires, one nibble per searched position, msb first.
  if (!layout.searched_positions.empty()) {
    const auto key = b.reg("key");
    layout.key_register.assign(key.begin(), key.end());
  }
  if (const auto spec = register_spec(inst); spec.back().first == "anc") {
    const auto anc = b.reg("anc");
    layout.ancillas.assign(anc.begin(), anc.end());
  }

  Circuit circuit = std::move(b).finish();
  if (circuit.qubit_count != layout.total_qubits) {
    throw OracleError("layout qubit budget mismatch");  // internal consistency
  }
  return {std::move(circuit), std::move(layout)};
}

// ---------------------------------------------------------------------------
// Exhaustive oracle verification against the classical ground truth.

struct OracleVerifyReport {
  std::uint64_t keys_checked = 0;
  std::uint64_t flips = 0;
  std::uint64_t expected_solutions = 0;
  bool registers_restored = true;
  // Packed searched-key values with a wrong phase or clobbered qubits.
  std::vector<std::uint64_t> phase_mismatches;
  std::vector<std::uint64_t> restore_mismatches;

  bool passed() const {
    return registers_restored && phase_mismatches.empty() &&
           restore_mismatches.empty() && flips == expected_solutions;
  }
};

inline OracleVerifyReport verify_circuit_against_solutions(
    const Circuit& circuit, const OracleLayout& layout, const AttackInstance& inst,
    const saes::RoundConstants& rc = {}) {
  OracleVerifyReport report;
  const ReversibleEmulator emulator(circuit);
  std::set<std::uint64_t> expected;
  for (const saes::Key k : saes::solutions(inst.plaintext, inst.ciphertext,
                                           inst.leak, rc)) {
    std::uint64_t packed = 0;
    for (int pos : layout.searched_positions) {
      packed = (packed << 4) | k.nibble(pos);
    }
    expected.insert(packed);
  }
  report.expected_solutions = expected.size();

  const std::uint64_t space = std::uint64_t{1}
                              << layout.key_register.size();
  for (std::uint64_t v = 0; v < space; ++v) {
    const std::uint64_t bits = scatter_bits(v, layout.key_register);
    const PhasedBasisState out = emulator.run({bits, 1});
    const bool flipped = out.phase < 0;
    if (flipped) ++report.flips;
    if (flipped != (expected.count(v) != 0)) {
      if (report.phase_mismatches.size() < 16) report.phase_mismatches.push_back(v);
    }
    if (out.bits != bits) {
      report.registers_restored = false;
      if (report.restore_mismatches.size() < 16) {
        report.restore_mismatches.push_back(v);
      }
    }
    ++report.keys_checked;
  }
  return report;
}

inline OracleVerifyReport verify_oracle(const AttackInstance& inst,
                                        const saes::RoundConstants& rc = {}) {
  const OracleBuild build = build_oracle(inst, rc);
  return verify_circuit_against_solutions(build.circuit, build.layout, inst, rc);
}

}  // namespace qsaes
