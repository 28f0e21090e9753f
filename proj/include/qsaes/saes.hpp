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

// Bit-exact classical Simplified-AES: a 16-bit-block, 16-bit-key, two-round
// cipher working on nibbles. Everything here is a pure function; the quantum
// oracle builders and every equivalence test are checked against this module.
//
// Ordering convention, used consistently across the project:
//   - bit a0 is the most significant bit of a byte,
//   - N0 is the most significant nibble of a 16-bit block,
//   - hex text reads N0..N3 left to right.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qsaes::saes {

using Nibble = std::uint8_t;  // low 4 bits used
using Byte = std::uint8_t;
using Block = std::uint16_t;  // nibbles N0 (msb) .. N3 (lsb)

inline constexpr std::array<Nibble, 16> kSbox = {
    0x9, 0x4, 0xA, 0xB, 0xD, 0x1, 0x8, 0x5,
    0x6, 0x2, 0x0, 0x3, 0xC, 0xE, 0xF, 0x7};

inline constexpr std::array<Nibble, 16> kInvSbox = [] {
  std::array<Nibble, 16> inv{};
  for (int i = 0; i < 16; ++i) inv[kSbox[i]] = static_cast<Nibble>(i);
  return inv;
}();

constexpr Nibble sbox(Nibble n) { return kSbox[n & 0xF]; }
constexpr Nibble inv_sbox(Nibble n) { return kInvSbox[n & 0xF]; }

constexpr Nibble byte_hi(Byte b) { return static_cast<Nibble>((b >> 4) & 0xF); }
constexpr Nibble byte_lo(Byte b) { return static_cast<Nibble>(b & 0xF); }
constexpr Byte make_byte(Nibble hi, Nibble lo) {
  return static_cast<Byte>(((hi & 0xF) << 4) | (lo & 0xF));
}

constexpr Nibble block_nibble(Block s, int i) {
  return static_cast<Nibble>((s >> (12 - 4 * i)) & 0xF);
}
constexpr Block make_block(Nibble n0, Nibble n1, Nibble n2, Nibble n3) {
  return static_cast<Block>(((n0 & 0xF) << 12) | ((n1 & 0xF) << 8) |
                            ((n2 & 0xF) << 4) | (n3 & 0xF));
}

constexpr Byte sub_byte(Byte b) {
  return make_byte(sbox(byte_hi(b)), sbox(byte_lo(b)));
}
constexpr Byte rotate_byte(Byte b) { return make_byte(byte_lo(b), byte_hi(b)); }

constexpr Block sub_nibbles(Block s) {
  return make_block(sbox(block_nibble(s, 0)), sbox(block_nibble(s, 1)),
                    sbox(block_nibble(s, 2)), sbox(block_nibble(s, 3)));
}
constexpr Block inv_sub_nibbles(Block s) {
  return make_block(inv_sbox(block_nibble(s, 0)), inv_sbox(block_nibble(s, 1)),
                    inv_sbox(block_nibble(s, 2)), inv_sbox(block_nibble(s, 3)));
}

// Swaps the second and fourth nibble; self-inverse.
constexpr Block shift_rows(Block s) {
  return make_block(block_nibble(s, 0), block_nibble(s, 3),
                    block_nibble(s, 2), block_nibble(s, 1));
}

// GF(16) multiplication, modulus x^4 + x + 1.
constexpr Nibble gf16_mul(Nibble a, Nibble b) {
  unsigned r = 0, x = a & 0xF;
  for (int i = 0; i < 4; ++i) {
    if ((b >> i) & 1) r ^= x << i;
  }
  for (int i = 7; i >= 4; --i) {
    if ((r >> i) & 1) r ^= (0b10011u << (i - 4));
  }
  return static_cast<Nibble>(r & 0xF);
}

// The 8-bit MixColumns map as a bitwise XOR network; with a0 = msb this is
// exactly (hi, lo) -> (hi ^ 4*lo, 4*hi ^ lo) over GF(16).
constexpr Byte mix_columns_byte(Byte a) {
  const Nibble hi = byte_hi(a), lo = byte_lo(a);
  return make_byte(hi ^ gf16_mul(4, lo), static_cast<Nibble>(gf16_mul(4, hi) ^ lo));
}

constexpr Byte inv_mix_columns_byte(Byte a) {
  // inverse column matrix is [[9,2],[2,9]] over GF(16)
  const Nibble hi = byte_hi(a), lo = byte_lo(a);
  return make_byte(static_cast<Nibble>(gf16_mul(9, hi) ^ gf16_mul(2, lo)),
                   static_cast<Nibble>(gf16_mul(2, hi) ^ gf16_mul(9, lo)));
}

// Applies mix_columns_byte independently to column (N0,N1) and column (N2,N3).
constexpr Block mix_columns(Block s) {
  const Byte c0 = mix_columns_byte(make_byte(block_nibble(s, 0), block_nibble(s, 1)));
  const Byte c1 = mix_columns_byte(make_byte(block_nibble(s, 2), block_nibble(s, 3)));
  return make_block(byte_hi(c0), byte_lo(c0), byte_hi(c1), byte_lo(c1));
}

constexpr Block inv_mix_columns(Block s) {
  const Byte c0 = inv_mix_columns_byte(make_byte(block_nibble(s, 0), block_nibble(s, 1)));
  const Byte c1 = inv_mix_columns_byte(make_byte(block_nibble(s, 2), block_nibble(s, 3)));
  return make_block(byte_hi(c0), byte_lo(c0), byte_hi(c1), byte_lo(c1));
}

struct Key {
  Byte b0 = 0;  // nibbles B0^0, B0^1
  Byte b1 = 0;  // nibbles B1^0, B1^1

  constexpr Key() = default;
  constexpr Key(Byte hi, Byte lo) : b0(hi), b1(lo) {}
  static constexpr Key from_bits(std::uint16_t v) {
    return Key(static_cast<Byte>(v >> 8), static_cast<Byte>(v & 0xFF));
  }
  constexpr std::uint16_t bits() const {
    return static_cast<std::uint16_t>((b0 << 8) | b1);
  }
  // key nibble by position: 0 = B0^0, 1 = B0^1, 2 = B1^0, 3 = B1^1
  constexpr Nibble nibble(int i) const {
    return static_cast<Nibble>((bits() >> (12 - 4 * i)) & 0xF);
  }
  friend constexpr bool operator==(Key a, Key b) { return a.bits() == b.bits(); }
};

struct RoundConstants {
  Byte c0 = 0x80;
  Byte c1 = 0x30;
};

struct RoundKeys {
  std::array<Byte, 6> b{};  // B0..B5

  // Round key added before round r (0, 1, 2) as a 16-bit value.
  constexpr std::uint16_t round_key(int r) const {
    return static_cast<std::uint16_t>((b[2 * r] << 8) | b[2 * r + 1]);
  }
};

// Eq-style expansion: B2 = C0 ^ B0 ^ S(R(B1)), B3 = B1 ^ B2,
// B4 = C1 ^ B2 ^ S(R(B3)), B5 = B3 ^ B4.
constexpr RoundKeys expand_key(Key k, RoundConstants rc = {}) {
  RoundKeys rk;
  rk.b[0] = k.b0;
  rk.b[1] = k.b1;
  rk.b[2] = static_cast<Byte>(rc.c0 ^ rk.b[0] ^ sub_byte(rotate_byte(rk.b[1])));
  rk.b[3] = static_cast<Byte>(rk.b[1] ^ rk.b[2]);
  rk.b[4] = static_cast<Byte>(rc.c1 ^ rk.b[2] ^ sub_byte(rotate_byte(rk.b[3])));
  rk.b[5] = static_cast<Byte>(rk.b[3] ^ rk.b[4]);
  return rk;
}

constexpr Block encrypt(Block p, Key k, RoundConstants rc = {}) {
  const RoundKeys rk = expand_key(k, rc);
  Block s = p ^ rk.round_key(0);
  s = mix_columns(shift_rows(sub_nibbles(s))) ^ rk.round_key(1);
  s = shift_rows(sub_nibbles(s)) ^ rk.round_key(2);
  return s;
}

constexpr Block decrypt(Block c, Key k, RoundConstants rc = {}) {
  const RoundKeys rk = expand_key(k, rc);
  Block s = c ^ rk.round_key(2);
  s = inv_sub_nibbles(shift_rows(s));
  s ^= rk.round_key(1);
  s = inv_mix_columns(s);
  s = inv_sub_nibbles(shift_rows(s));
  return s ^ rk.round_key(0);
}

// Side-channel knowledge of individual key nibbles. Positions follow
// Key::nibble: 0 = B0^0, 1 = B0^1, 2 = B1^0, 3 = B1^1.
struct LeakConfig {
  std::array<std::optional<Nibble>, 4> nibble{};

  static LeakConfig none() { return {}; }
  static LeakConfig full_b0(Byte b0) {
    LeakConfig l;
    l.nibble[0] = byte_hi(b0);
    l.nibble[1] = byte_lo(b0);
    return l;
  }
  static LeakConfig full_b1(Byte b1) {
    LeakConfig l;
    l.nibble[2] = byte_hi(b1);
    l.nibble[3] = byte_lo(b1);
    return l;
  }

  int leaked_count() const {
    int n = 0;
    for (const auto& v : nibble) n += v.has_value();
    return n;
  }
  bool is_leaked(int pos) const { return nibble[pos].has_value(); }
  bool matches(Key k) const {
    for (int i = 0; i < 4; ++i) {
      if (nibble[i] && *nibble[i] != k.nibble(i)) return false;
    }
    return true;
  }
  // Unleaked positions in ascending order; these are the searched nibbles.
  std::vector<int> searched_positions() const {
    std::vector<int> out;
    for (int i = 0; i < 4; ++i) {
      if (!nibble[i]) out.push_back(i);
    }
    return out;
  }
  // Combine the leak with a packed assignment of the searched nibbles
  // (first searched nibble in the most significant position of `searched`).
  Key merge(std::uint32_t searched) const {
    const auto pos = searched_positions();
    std::uint16_t bits = 0;
    std::size_t next = 0;
    for (int i = 0; i < 4; ++i) {
      Nibble v;
      if (nibble[i]) {
        v = *nibble[i];
      } else {
        const int shift = 4 * static_cast<int>(pos.size() - 1 - next);
        v = static_cast<Nibble>((searched >> shift) & 0xF);
        ++next;
      }
      bits = static_cast<std::uint16_t>(bits | (v & 0xF) << (12 - 4 * i));
    }
    return Key::from_bits(bits);
  }
};

// Brute-force enumeration of every key consistent with the leak whose
// encryption of p equals c; the ground truth for oracle phase-flip tests
// and for M in Grover iteration planning.
inline std::vector<Key> solutions(Block p, Block c, const LeakConfig& leak,
                                  RoundConstants rc = {}) {
  std::vector<Key> out;
  const auto pos = leak.searched_positions();
  const std::uint32_t space = 1u << (4 * pos.size());
  for (std::uint32_t v = 0; v < space; ++v) {
    const Key k = leak.merge(v);
    if (encrypt(p, k, rc) == c) out.push_back(k);
  }
  return out;
}

}  // namespace qsaes::saes
