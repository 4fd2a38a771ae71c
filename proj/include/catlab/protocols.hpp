// Copyright 2026 The Catlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catlab/clifford.hpp"
#include "catlab/models.hpp"
#include "catlab/stabilizer.hpp"
#include "catlab/verify.hpp"
#include "json.hpp"

namespace catlab {

/// Thrown for catalysts without a registered preparation circuit.
class NoCircuitRealization : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// SplitMix64 step; used to derive independent per-run seeds.
uint64_t splitmix64(uint64_t& state);
/// Seed of run `index` under `root`.
uint64_t derive_seed(uint64_t root, uint64_t index);

struct Stage {
  enum class Kind { Circuit, Measurement };
  std::string name;
  Kind kind = Kind::Circuit;
  CliffordCircuit circuit;
  std::vector<PauliOperator> measured;
  bool audit_pass = false;
  bool long_range = false;
  std::size_t long_range_gates = 0;
  std::size_t depth() const { return kind == Kind::Circuit ? circuit.depth() : (measured.empty() ? 0 : 1); }
  nlohmann::json to_json() const;
};

enum class PipelineMode { Ancilla, FourStep };
std::string mode_name(PipelineMode m);
PipelineMode parse_mode(const std::string& text);

struct PreparationSchedule {
  std::string model;
  std::string catalyst;
  PipelineMode mode = PipelineMode::Ancilla;
  std::size_t num_qubits = 0;
  std::vector<Stage> stages;
  /// Catalyst preparation depth.
  std::size_t tau = 0;
  /// Doubled-circuit depth (ancilla mode).
  std::size_t doubled_depth = 0;
  bool final_matches_target = false;
  bool catalyst_restored = false;
  bool audits_pass = false;

  std::size_t total_depth() const;
  std::size_t long_range_gates() const;
  bool pass() const { return final_matches_target && audits_pass; }
  nlohmann::json to_json() const;
};

/// Symmetric preparation circuit U_a for a registry catalyst, acting on a
/// register of the bundle's size starting from the trivial state.
struct CatalystCircuit {
  CliffordCircuit circuit;
  bool long_range = false;
};
CatalystCircuit catalyst_circuit(const ModelBundle& bundle, const std::string& catalyst);

/// Ancilla mode: U_a on register B, then the doubled circuit, optionally
/// followed by U_a^-1 on B. Four-step mode: U_a, then U U_a^-1 U^-1 compiled
/// gate by gate, on a single register.
PreparationSchedule catalyzed_pipeline(const ModelBundle& bundle, const std::string& catalyst, PipelineMode mode,
                                       bool unmake = false);

/// Per-gate audit of circuit stages, commutation check of measured Paulis.
bool audit_schedule(const PreparationSchedule& schedule, const SymmetryRep& symmetry);

struct MeasurementRecord {
  uint64_t seed = 0;
  /// Outcome of Z_i Z_{i+2}, i = 0..n-1.
  std::vector<int> outcomes;
  bool even_parity = false;
  bool odd_parity = false;
  bool invariant = false;
  bool catalyzes = false;
  StabilizerMixture post_state;
  bool ok() const { return even_parity && odd_parity && invariant && catalyzes; }
  nlohmann::json to_json() const;
};

/// The measured observables Z_i Z_{i+2} as a one-stage schedule.
PreparationSchedule measurement_schedule(std::size_t n);

/// Measures every Z_i Z_{i+2} on |+>^n, then checks parity, U_CZ invariance,
/// and that the doubled U_CZ maps |+>^n (x) post to cluster (x) post.
MeasurementRecord measurement_prepare_catalyst(std::size_t n, uint64_t seed);

struct MeasurementSweep {
  std::size_t n = 0;
  uint64_t root_seed = 0;
  std::vector<MeasurementRecord> records;
  /// Chi-square of the first n-2 outcomes against the uniform distribution.
  double chi_square = 0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 0;
  std::size_t failures() const;
  bool pass(double threshold = 1e-3) const { return failures() == 0 && p_value > threshold; }
  nlohmann::json to_json(bool include_records = false) const;
};

MeasurementSweep measurement_sweep(std::size_t n, std::size_t runs, uint64_t root_seed, std::size_t jobs = 1);

}  // namespace catlab
