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

// Command-line workbench: cipher utilities, oracle construction and export,
// exhaustive oracle verification, Grover attack simulation, benchmarks.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsaes/grover.hpp"
#include "qsaes/oracle.hpp"
#include "qsaes/saes.hpp"

namespace {

using nlohmann::json;
using namespace qsaes;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kSchemaVersion = 1;

// Attacks wider than this refuse to run without --allow-long: beyond ~2^20
// amplitudes times hundreds of iterations the run stops being interactive.
constexpr std::uint32_t kInteractiveQubitLimit = 20;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint16_t parse_hex4(const std::string& text, const std::string& what) {
  if (text.size() != 4 || text.find_first_not_of("0123456789abcdefABCDEF") !=
                              std::string::npos) {
    throw UsageError(what + " must be exactly four hex digits, got '" + text + "'");
  }
  return static_cast<std::uint16_t>(std::stoul(text, nullptr, 16));
}

saes::Nibble parse_hex1(const std::string& text, const std::string& what) {
  if (text.size() != 1 ||
      text.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw UsageError(what + " must be one hex digit, got '" + text + "'");
  }
  return static_cast<saes::Nibble>(std::stoul(text, nullptr, 16));
}

// Grammar: comma-separated POSITION=HEXDIGIT with positions B0^0,B0^1,B1^0,B1^1.
saes::LeakConfig parse_leak(const std::string& spec) {
  saes::LeakConfig leak;
  if (spec.empty()) return leak;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::string entry =
        spec.substr(start, comma == std::string::npos ? comma : comma - start);
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw UsageError("leak entry '" + entry + "' is not POSITION=HEXDIGIT");
    }
    const std::string pos_text = entry.substr(0, eq);
    int pos = -1;
    if (pos_text == "B0^0" || pos_text == "b0^0") pos = 0;
    if (pos_text == "B0^1" || pos_text == "b0^1") pos = 1;
    if (pos_text == "B1^0" || pos_text == "b1^0") pos = 2;
    if (pos_text == "B1^1" || pos_text == "b1^1") pos = 3;
    if (pos < 0) {
      throw UsageError("unknown leak position '" + pos_text +
                       "' (expected B0^0, B0^1, B1^0 or B1^1)");
    }
    if (leak.nibble[pos]) {
      throw UsageError("leak position '" + pos_text + "' given twice");
    }
    leak.nibble[pos] = parse_hex1(entry.substr(eq + 1), "leak value");
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return leak;
}

OracleVariant parse_variant(const std::string& name) {
  if (name == "full") return OracleVariant::FullBasic;
  if (name == "b1-leak") return OracleVariant::B1LeakExact;
  if (name == "split") return OracleVariant::Split;
  if (name == "double-split") return OracleVariant::DoubleSplit;
  throw UsageError("unknown variant '" + name +
                   "' (expected full, b1-leak, split or double-split)");
}

std::string hex4(std::uint16_t v) {
  char buf[5];
  std::snprintf(buf, sizeof buf, "%04x", v);
  return buf;
}

json stats_json(const Circuit& circuit) {
  const CircuitStats stats = circuit.stats();
  json by_kind = json::object();
  for (int k = 0; k < kGateKindCount; ++k) {
    const auto count = stats.count_by_kind[static_cast<std::size_t>(k)];
    if (count > 0) by_kind[std::string(gate_kind_name(static_cast<GateKind>(k)))] = count;
  }
  return {{"qubit_count", stats.qubit_count},
          {"total_gates", stats.total_gates},
          {"depth", stats.depth},
          {"gate_counts", by_kind}};
}

json plan_json(const GroverPlan& plan) {
  return {{"search_qubits", plan.search_qubits},
          {"search_space", plan.search_space},
          {"solution_count", plan.solution_count},
          {"iterations", plan.iterations},
          {"predicted_success", plan.predicted_success},
          {"attackable", plan.attackable}};
}

struct OracleArgs {
  std::string variant = "double-split";
  std::string leak_spec;
  std::string plaintext;
  std::string ciphertext;

  AttackInstance instance() const {
    AttackInstance inst;
    inst.variant = parse_variant(variant);
    inst.leak = parse_leak(leak_spec);
    inst.plaintext = parse_hex4(plaintext, "--plaintext");
    inst.ciphertext = parse_hex4(ciphertext, "--ciphertext");
    return inst;
  }
};

void add_oracle_options(CLI::App* cmd, OracleArgs& args) {
  cmd->add_option("--variant", args.variant,
                  "oracle variant: full, b1-leak, split, double-split")
      ->required();
  cmd->add_option("--leak", args.leak_spec,
                  "leaked key nibbles, e.g. B1^0=A,B1^1=3");
  cmd->add_option("--plaintext", args.plaintext, "16-bit plaintext, 4 hex digits")
      ->required();
  cmd->add_option("--ciphertext", args.ciphertext, "16-bit ciphertext, 4 hex digits")
      ->required();
}

int run(int argc, char** argv) {
  CLI::App app{"Quantum Grover-attack workbench for Simplified-AES"};
  app.require_subcommand(1);

  std::string key_text, data_text;
  auto* enc = app.add_subcommand("encrypt", "encrypt one block");
  enc->add_option("--key", key_text, "16-bit key, 4 hex digits")->required();
  enc->add_option("--text", data_text, "16-bit plaintext, 4 hex digits")->required();
  auto* dec = app.add_subcommand("decrypt", "decrypt one block");
  dec->add_option("--key", key_text, "16-bit key, 4 hex digits")->required();
  dec->add_option("--text", data_text, "16-bit ciphertext, 4 hex digits")->required();

  OracleArgs build_args;
  std::string emit = "stats";
  auto* build = app.add_subcommand("build-oracle", "construct an oracle circuit");
  add_oracle_options(build, build_args);
  build->add_option("--emit", emit, "what to print: text or stats");

  OracleArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify", "exhaustively check the oracle phase-flip set by reversible emulation");
  add_oracle_options(verify, verify_args);

  OracleArgs attack_args;
  std::uint32_t shots = 4096;
  std::uint64_t seed = 1;
  bool allow_long = false;
  auto* attack = app.add_subcommand("attack", "run the Grover attack end to end");
  add_oracle_options(attack, attack_args);
  attack->add_option("--shots", shots, "measurement shots (default 4096)");
  attack->add_option("--seed", seed, "measurement RNG seed (default 1)");
  attack->add_flag("--allow-long", allow_long,
                   "permit large statevectors and hours-scale runs");

  std::string suite = "gates";
  auto* bench = app.add_subcommand("bench", "timing measurements");
  bench->add_option("--suite", suite, "gates, oracle or attack");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (enc->parsed() || dec->parsed()) {
      const auto key = saes::Key::from_bits(parse_hex4(key_text, "--key"));
      const auto data = parse_hex4(data_text, "--text");
      std::cout << hex4(enc->parsed() ? saes::encrypt(data, key)
                                      : saes::decrypt(data, key))
                << "\n";
      return kExitOk;
    }

    if (build->parsed()) {
      const AttackInstance inst = build_args.instance();
      const OracleBuild oracle = build_oracle(inst);
      if (emit == "text") {
        std::cout << oracle.circuit.to_text();
      } else if (emit == "stats") {
        json out = stats_json(oracle.circuit);
        out["schema_version"] = kSchemaVersion;
        out["variant"] = std::string(oracle_variant_name(inst.variant));
        out["search_qubits"] = oracle.layout.key_register.size();
        out["ancilla_count"] = oracle.layout.ancillas.size();
        std::cout << out.dump(2) << "\n";
      } else {
        throw UsageError("--emit must be text or stats");
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      const AttackInstance inst = verify_args.instance();
      const OracleVerifyReport report = verify_oracle(inst);
      const json out = {
          {"schema_version", kSchemaVersion},
          {"variant", std::string(oracle_variant_name(inst.variant))},
          {"keys_checked", report.keys_checked},
          {"flips_found", report.flips},
          {"expected_solutions", report.expected_solutions},
          {"registers_restored", report.registers_restored},
          {"phase_mismatches", report.phase_mismatches},
          {"restore_mismatches", report.restore_mismatches},
          {"passed", report.passed()},
      };
      std::cout << out.dump(2) << "\n";
      return report.passed() ? kExitOk : kExitVerifyFailure;
    }

    if (attack->parsed()) {
      const AttackInstance inst = attack_args.instance();
      const OracleBuild oracle = build_oracle(inst);
      if (oracle.circuit.qubit_count > kInteractiveQubitLimit && !allow_long) {
        std::cerr << "this attack simulates " << oracle.circuit.qubit_count
                  << " qubits and can run for minutes to hours; rerun with "
                     "--allow-long to proceed (verify covers correctness quickly)\n";
        return kExitUsage;
      }
      const AttackResult result = run_attack(inst, shots, seed, {}, allow_long);
      json histogram = json::object();
      // keep the payload small: only outcomes above 1% of the shots
      for (const auto& [outcome, count] : result.histogram) {
        if (count * 100 >= shots) histogram[hex4(static_cast<std::uint16_t>(outcome))] = count;
      }
      const json out = {
          {"schema_version", kSchemaVersion},
          {"variant", std::string(oracle_variant_name(inst.variant))},
          {"plan", plan_json(result.plan)},
          {"shots", shots},
          {"seed", seed},
          {"histogram_top", histogram},
          {"best_key", hex4(result.best_key.bits())},
          {"verified", result.verified},
          {"empirical_success", result.empirical_success},
      };
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }

    if (bench->parsed()) {
      using clock = std::chrono::steady_clock;
      json out = {{"schema_version", kSchemaVersion}, {"suite", suite}};
      if (suite == "gates") {
        json sizes = json::array();
        for (std::uint32_t n = 20; n <= 24; n += 2) {
          StateVector state(n, 0);
          json entry = {{"qubits", n}};
          const double amps = static_cast<double>(std::uint64_t{1} << n);
          const auto time_gate = [&](const char* name, const Gate& g, int reps) {
            const auto t0 = clock::now();
            for (int i = 0; i < reps; ++i) state.apply(g);
            const std::chrono::duration<double> dt = clock::now() - t0;
            entry[name] = dt.count() / reps / amps * 1e9;  // ns per amplitude
          };
          time_gate("x_ns_per_amp", Gate::x(0), 8);
          time_gate("h_ns_per_amp", Gate::h(1), 8);
          time_gate("cx_ns_per_amp", Gate::cnot(0, 1), 8);
          time_gate("ccx_ns_per_amp", Gate::toffoli(0, 1, 2), 8);
          time_gate("mcz_ns_per_amp", Gate::mcz({0, 1, 2, 3, 4, 5, 6, 7}), 8);
          sizes.push_back(entry);
        }
        out["gates"] = sizes;
      } else if (suite == "oracle") {
        AttackInstance inst;
        inst.variant = OracleVariant::FullBasic;
        inst.plaintext = 0x6F6B;
        inst.ciphertext = saes::encrypt(0x6F6B, saes::Key::from_bits(0xA73B));
        const auto t0 = clock::now();
        const OracleVerifyReport report = verify_oracle(inst);
        const std::chrono::duration<double> dt = clock::now() - t0;
        out["keys_checked"] = report.keys_checked;
        out["wall_seconds"] = dt.count();
        out["keys_per_second"] = report.keys_checked / dt.count();
      } else if (suite == "attack") {
        AttackInstance inst;
        inst.variant = OracleVariant::DoubleSplit;
        const auto key = saes::Key::from_bits(0x4AF5);
        inst.plaintext = 0xD728;
        inst.ciphertext = saes::encrypt(inst.plaintext, key);
        inst.leak.nibble[0] = key.nibble(0);
        inst.leak.nibble[1] = key.nibble(1);
        const GroverPlan p = plan(inst);
        const auto t0 = clock::now();
        const AttackResult result = run_attack(inst, 1024, 7);
        const std::chrono::duration<double> dt = clock::now() - t0;
        out["qubits"] = 15;
        out["iterations"] = p.iterations;
        out["wall_seconds"] = dt.count();
        out["iterations_per_second"] = p.iterations / dt.count();
        out["verified"] = result.verified;
      } else {
        throw UsageError("--suite must be gates, oracle or attack");
      }
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OracleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailure;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
