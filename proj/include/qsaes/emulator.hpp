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

// Phase-tracking reversible emulation. Hadamard-free circuits over
// X/CNOT/Toffoli/MCX/Z/MCZ never create superposition: a basis state stays a
// basis state, Z-type gates contribute -1 factors. One emulation step is a
// couple of mask operations on a 64-bit word, which is what makes exhaustive
// 2^16-key oracle verification cheap.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qsaes/circuit.hpp"

namespace qsaes {

struct PhasedBasisState {
  std::uint64_t bits = 0;  // qubit q = bit q
  int phase = 1;           // +1 or -1
};

class UnsupportedGateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Compiled form of a Hadamard-free circuit for repeated emulation.
class ReversibleEmulator {
 public:
  explicit ReversibleEmulator(const Circuit& c) : qubit_count_(c.qubit_count) {
    steps_.reserve(c.gates.size());
    for (const Gate& g : c.gates) {
      if (g.kind == GateKind::Hadamard) {
        throw UnsupportedGateError(
            "reversible emulation requires a Hadamard-free circuit");
      }
      Step s;
      for (QubitId q : g.controls) s.cmask |= std::uint64_t{1} << q;
      if (g.is_phase_kind()) {
        if (g.kind == GateKind::PauliZ) s.cmask = std::uint64_t{1} << g.target;
        s.tmask = 0;
      } else {
        s.tmask = std::uint64_t{1} << g.target;
      }
      steps_.push_back(s);
    }
  }

  std::uint32_t qubit_count() const { return qubit_count_; }

  PhasedBasisState run(PhasedBasisState in) const {
    std::uint64_t bits = in.bits;
    int phase = in.phase;
    for (const Step& s : steps_) {
      if ((bits & s.cmask) == s.cmask) {
        if (s.tmask != 0) {
          bits ^= s.tmask;
        } else {
          phase = -phase;
        }
      }
    }
    return {bits, phase};
  }

 private:
  struct Step {
    std::uint64_t cmask = 0;
    std::uint64_t tmask = 0;  // zero for phase gates
  };
  std::uint32_t qubit_count_;
  std::vector<Step> steps_;
};

inline PhasedBasisState emulate(const Circuit& c, PhasedBasisState in) {
  return ReversibleEmulator(c).run(in);
}

}  // namespace qsaes
