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

// Grover attack driver: iteration planning from the classically-counted
// solution set, the diffusion operator on the searched key register, full
// statevector execution, measurement and candidate verification.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <vector>

#include "qsaes/oracle.hpp"
#include "qsaes/statevector.hpp"

namespace qsaes {

struct GroverPlan {
  std::uint32_t search_qubits = 0;
  std::uint64_t search_space = 0;   // N
  std::uint64_t solution_count = 0; // M, from brute force
  std::uint32_t iterations = 0;     // floor(pi/4 * sqrt(N/M))
  double predicted_success = 0.0;   // sin^2((2r+1) asin(sqrt(M/N)))
  bool attackable = false;          // M >= 1
};

struct AttackResult {
  GroverPlan plan;
  std::map<std::uint64_t, std::uint64_t> histogram;  // key register readout
  std::uint64_t best_outcome = 0;
  saes::Key best_key;
  bool verified = false;
  double empirical_success = 0.0;
};

inline GroverPlan make_plan(std::uint32_t search_qubits, std::uint64_t solutions) {
  GroverPlan plan;
  plan.search_qubits = search_qubits;
  plan.search_space = std::uint64_t{1} << search_qubits;
  plan.solution_count = solutions;
  plan.attackable = solutions > 0;
  if (!plan.attackable) return plan;
  const double ratio = static_cast<double>(plan.search_space) /
                       static_cast<double>(plan.solution_count);
  plan.iterations = static_cast<std::uint32_t>(
      std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
  const double theta = std::asin(std::sqrt(1.0 / ratio));
  const double amplitude = std::sin((2.0 * plan.iterations + 1.0) * theta);
  plan.predicted_success = amplitude * amplitude;
  return plan;
}

inline GroverPlan plan(const AttackInstance& inst,
                       const saes::RoundConstants& rc = {}) {
  const OracleLayout layout = plan_layout(inst);
  const auto sols = saes::solutions(inst.plaintext, inst.ciphertext, inst.leak, rc);
  return make_plan(static_cast<std::uint32_t>(4 * layout.searched_positions.size()),
                   sols.size());
}

// Inversion about the mean on the searched register:
// H^n, X^n, multi-controlled Z, X^n, H^n.
inline void diffusion(CircuitBuilder& b, std::span<const QubitId> key_register) {
  for (QubitId q : key_register) b.h(q);
  for (QubitId q : key_register) b.x(q);
  if (key_register.size() == 1) {
    b.z(key_register[0]);
  } else {
    b.mcz({key_register.begin(), key_register.end()});
  }
  for (QubitId q : key_register) b.x(q);
  for (QubitId q : key_register) b.h(q);
}

namespace grover_detail {

struct Prepared {
  OracleBuild oracle;
  Circuit diffusion_circuit;
  std::set<std::uint64_t> solution_set;  // packed searched values
  GroverPlan plan;
};

inline Prepared prepare(const AttackInstance& inst, const saes::RoundConstants& rc) {
  Prepared prep{build_oracle(inst, rc), {}, {}, {}};
  if (prep.oracle.layout.key_register.empty()) {
    throw OracleError("attack needs at least one searched key qubit");
  }
  CircuitBuilder diff(register_spec(inst));
  diffusion(diff, prep.oracle.layout.key_register);
  prep.diffusion_circuit = std::move(diff).finish();
  for (const saes::Key k :
       saes::solutions(inst.plaintext, inst.ciphertext, inst.leak, rc)) {
    std::uint64_t packed = 0;
    for (int pos : prep.oracle.layout.searched_positions) {
      packed = (packed << 4) | k.nibble(pos);
    }
    prep.solution_set.insert(packed);
  }
  prep.plan = make_plan(
      static_cast<std::uint32_t>(prep.oracle.layout.key_register.size()),
      prep.solution_set.size());
  return prep;
}

}  // namespace grover_detail

// Runs the full attack: uniform superposition on the key register, r rounds
// of oracle + diffusion, `shots` measurements of the key register, classical
// verification of the modal outcome.
inline AttackResult run_attack(const AttackInstance& inst, std::uint32_t shots,
                               std::uint64_t seed,
                               const saes::RoundConstants& rc = {},
                               bool allow_large = false) {
  const auto prep = grover_detail::prepare(inst, rc);
  if (!prep.plan.attackable) {
    throw OracleError("instance has no solutions (M = 0); nothing to amplify");
  }
  AttackResult result;
  result.plan = prep.plan;

  StateVector state(prep.oracle.circuit.qubit_count, 0, allow_large);
  const auto& key_register = prep.oracle.layout.key_register;
  for (QubitId q : key_register) state.apply(Gate::h(q));
  for (std::uint32_t r = 0; r < prep.plan.iterations; ++r) {
    state.run(prep.oracle.circuit);
    state.run(prep.diffusion_circuit);
  }

  result.histogram = state.measure(key_register, seed, shots);
  std::uint64_t solution_hits = 0, best_count = 0;
  for (const auto& [outcome, count] : result.histogram) {
    if (prep.solution_set.count(outcome)) solution_hits += count;
    if (count > best_count) {
      best_count = count;
      result.best_outcome = outcome;
    }
  }
  result.empirical_success =
      shots == 0 ? 0.0
                 : static_cast<double>(solution_hits) / static_cast<double>(shots);
  result.best_key = inst.leak.merge(static_cast<std::uint32_t>(result.best_outcome));
  result.verified =
      saes::encrypt(inst.plaintext, result.best_key, rc) == inst.ciphertext;
  return result;
}

// Exact solution probability after each of 0..r_max iterations, read from the
// amplitudes directly (no sampling).
inline std::vector<std::pair<std::uint32_t, double>> success_curve(
    const AttackInstance& inst, std::uint32_t r_max,
    const saes::RoundConstants& rc = {}, bool allow_large = false) {
  const auto prep = grover_detail::prepare(inst, rc);
  StateVector state(prep.oracle.circuit.qubit_count, 0, allow_large);
  const auto& key_register = prep.oracle.layout.key_register;
  for (QubitId q : key_register) state.apply(Gate::h(q));

  std::vector<std::pair<std::uint32_t, double>> curve;
  const auto solution_mass = [&] {
    return state.mass_where(key_register, [&](std::uint64_t v) {
      return prep.solution_set.count(v) != 0;
    });
  };
  curve.emplace_back(0, solution_mass());
  for (std::uint32_t r = 1; r <= r_max; ++r) {
    state.run(prep.oracle.circuit);
    state.run(prep.diffusion_circuit);
    curve.emplace_back(r, solution_mass());
  }
  return curve;
}

}  // namespace qsaes
