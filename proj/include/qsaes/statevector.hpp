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

// Exact statevector simulation. Amplitudes live in one flat dense array
// indexed by basis integer; qubit q is bit q of the index. Gate kernels and
// reductions run in a fixed order, so results are bit-identical across runs.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "qsaes/circuit.hpp"

namespace qsaes {

class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StateVector {
 public:
  // 26 qubits = 1 GiB of amplitudes; runs needing more must opt in.
  static constexpr std::uint32_t kQubitGuard = 26;
  static constexpr std::uint32_t kQubitHardLimit = 30;

  explicit StateVector(std::uint32_t n, std::uint64_t basis = 0,
                       bool allow_large = false)
      : n_(n) {
    const std::uint32_t limit = allow_large ? kQubitHardLimit : kQubitGuard;
    if (n > limit) {
      throw ResourceGuardError(
          "statevector of " + std::to_string(n) + " qubits exceeds the " +
          std::to_string(limit) + "-qubit guard" +
          (allow_large ? "" : " (pass allow_large to raise it)"));
    }
    if (n < 64 && basis >> n) {
      throw CircuitError("basis state outside qubit range");
    }
    amp_.assign(std::uint64_t{1} << n, {0.0, 0.0});
    amp_[basis] = {1.0, 0.0};
  }

  std::uint32_t qubit_count() const { return n_; }
  std::span<const std::complex<double>> amplitudes() const { return amp_; }

  void apply(const Gate& g) {
    std::uint64_t cmask = 0;
    for (QubitId c : g.controls) cmask |= std::uint64_t{1} << c;
    switch (g.kind) {
      case GateKind::PauliX:
      case GateKind::Cnot:
      case GateKind::Toffoli:
      case GateKind::MultiControlledX:
        apply_controlled_x(cmask, std::uint64_t{1} << g.target);
        break;
      case GateKind::PauliZ:
        apply_phase(std::uint64_t{1} << g.target);
        break;
      case GateKind::MultiControlledZ:
        apply_phase(cmask);
        break;
      case GateKind::Hadamard:
        apply_hadamard(std::uint64_t{1} << g.target);
        break;
    }
  }

  void run(const Circuit& c) {
    if (c.qubit_count != n_) {
      throw CircuitError("circuit qubit count does not match state");
    }
    for (const Gate& g : c.gates) apply(g);
  }

  double norm() const {
    // Fixed-size chunked accumulation keeps the combination order stable.
    constexpr std::size_t kChunk = 1 << 12;
    double total = 0.0;
    for (std::size_t base = 0; base < amp_.size(); base += kChunk) {
      const std::size_t end = std::min(base + kChunk, amp_.size());
      double part = 0.0;
      for (std::size_t i = base; i < end; ++i) part += std::norm(amp_[i]);
      total += part;
    }
    return std::sqrt(total);
  }

  // Probability mass of basis states whose `wires` readout (first wire = msb)
  // satisfies `pred`.
  template <typename Pred>
  double mass_where(std::span<const QubitId> wires, Pred pred) const {
    constexpr std::size_t kChunk = 1 << 12;
    double total = 0.0;
    for (std::size_t base = 0; base < amp_.size(); base += kChunk) {
      const std::size_t end = std::min(base + kChunk, amp_.size());
      double part = 0.0;
      for (std::size_t i = base; i < end; ++i) {
        if (pred(pack_bits(i, wires))) part += std::norm(amp_[i]);
      }
      total += part;
    }
    return total;
  }

  // `shots` independent samples of the marginal distribution over `wires`
  // (distinct, ≤ 24). Seed-deterministic regardless of platform: the sampler
  // uses raw mt19937_64 output, never distribution adapters.
  std::map<std::uint64_t, std::uint64_t> measure(std::span<const QubitId> wires,
                                                 std::uint64_t seed,
                                                 std::uint64_t shots) const {
    if (wires.size() > 24) throw CircuitError("measured register too wide");
    std::vector<QubitId> sorted(wires.begin(), wires.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw CircuitError("measured qubits must be distinct");
    }
    const std::size_t bins = std::size_t{1} << wires.size();
    std::vector<double> cumulative(bins, 0.0);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      cumulative[pack_bits(i, wires)] += std::norm(amp_[i]);
    }
    double acc = 0.0;
    for (double& c : cumulative) {
      acc += c;
      c = acc;
    }
    std::mt19937_64 rng(seed);
    std::map<std::uint64_t, std::uint64_t> histogram;
    for (std::uint64_t s = 0; s < shots; ++s) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
      const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
      const auto outcome =
          static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
              it - cumulative.begin(), static_cast<std::ptrdiff_t>(bins) - 1));
      ++histogram[outcome];
    }
    return histogram;
  }

 private:
  // Kernels touch only the affected indices: with k control bits that is
  // 2^(n-k-1) pairs instead of a full 2^n scan, which is what keeps the
  // multi-control-heavy oracle circuits fast. `s = (s - 1) & free` walks
  // every submask of the free bits in a fixed (descending) order.
  void apply_controlled_x(std::uint64_t cmask, std::uint64_t tmask) {
    const std::uint64_t free = (amp_.size() - 1) & ~(cmask | tmask);
    std::uint64_t s = free;
    while (true) {
      const std::uint64_t i = s | cmask;
      std::swap(amp_[i], amp_[i | tmask]);
      if (s == 0) break;
      s = (s - 1) & free;
    }
  }

  void apply_phase(std::uint64_t mask) {
    const std::uint64_t free = (amp_.size() - 1) & ~mask;
    std::uint64_t s = free;
    while (true) {
      amp_[s | mask] = -amp_[s | mask];
      if (s == 0) break;
      s = (s - 1) & free;
    }
  }

  void apply_hadamard(std::uint64_t tmask) {
    constexpr double kInvSqrt2 = 0.7071067811865475244;
    const std::uint64_t free = (amp_.size() - 1) & ~tmask;
    std::uint64_t s = free;
    while (true) {
      const std::complex<double> a = amp_[s];
      const std::complex<double> b = amp_[s | tmask];
      amp_[s] = (a + b) * kInvSqrt2;
      amp_[s | tmask] = (a - b) * kInvSqrt2;
      if (s == 0) break;
      s = (s - 1) & free;
    }
  }

  std::uint32_t n_;
  std::vector<std::complex<double>> amp_;
};

}  // namespace qsaes
