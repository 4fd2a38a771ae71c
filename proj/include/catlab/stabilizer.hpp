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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "catlab/clifford.hpp"
#include "catlab/pauli.hpp"
#include "json.hpp"

namespace catlab {

/// Exact value 2^(half_exponent / 2), or zero.
struct DyadicValue {
  bool zero = false;
  int64_t half_exponent = 0;

  static DyadicValue zero_value() { return {true, 0}; }
  static DyadicValue power_of_two(int64_t e) { return {false, 2 * e}; }
  double to_double() const;
  bool is_one() const { return !zero && half_exponent == 0; }
  std::string to_string() const;
  bool operator==(const DyadicValue&) const = default;
};

/// Raised when fidelity or Rényi inputs leave the commuting-projector case.
class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// rho = 2^(k-n) prod_j (1 + g_j) for k commuting, independent generators.
class StabilizerMixture {
 public:
  StabilizerMixture() = default;
  explicit StabilizerMixture(std::size_t n) : n_(n) {}
  /// Validates commutation, Hermiticity and independence.
  StabilizerMixture(std::size_t n, std::vector<PauliOperator> generators);

  /// |0...0> or |+...+>.
  static StabilizerMixture zeros(std::size_t n);
  static StabilizerMixture plus(std::size_t n);
  static StabilizerMixture from_strings(const std::vector<std::string>& generators);

  std::size_t num_qubits() const { return n_; }
  std::size_t rank() const { return gens_.size(); }
  bool is_pure() const { return gens_.size() == n_; }
  const std::vector<PauliOperator>& generators() const { return gens_; }

  StabilizerMixture apply(const CliffordGate& g) const;
  StabilizerMixture apply(const CliffordCircuit& c) const;
  StabilizerMixture apply(const CliffordQca& u) const;
  /// Conjugates every generator by a Pauli.
  StabilizerMixture conjugated_by(const PauliOperator& p) const;

  /// +1 or -1 if that sign of p lies in the group, nullopt otherwise.
  std::optional<int> group_sign(const PauliOperator& p) const;
  bool contains(const PauliOperator& p) const;
  /// Tr(rho p) for Hermitian p.
  int expectation(const PauliOperator& p) const;

  struct Measurement {
    int outcome = 1;
    bool deterministic = false;
  };
  /// Projective measurement of Hermitian p; updates this state.
  Measurement measure(const PauliOperator& p, std::mt19937_64& rng);
  /// Projects onto the given outcome. Returns false (state unchanged) when
  /// that outcome has probability zero.
  bool project(const PauliOperator& p, int outcome);
  /// Adds a commuting generator outside the group, or checks consistency.
  StabilizerMixture with_generator(const PauliOperator& p) const;

  /// Generators in reduced row-echelon form over (x | z).
  StabilizerMixture canonical() const;
  bool same_state(const StabilizerMixture& other) const;
  bool is_invariant(const CliffordCircuit& c) const;
  bool is_invariant(const CliffordQca& u) const;

  StabilizerMixture tensor(const StabilizerMixture& other) const;

  nlohmann::json to_json() const;
  static StabilizerMixture from_json(const nlohmann::json& j);

 private:
  void check_pauli(const PauliOperator& p) const;
  std::size_t n_ = 0;
  std::vector<PauliOperator> gens_;
};

/// Tr sqrt(sqrt(rho) sigma sqrt(rho)) in the commuting-projector case.
DyadicValue fidelity(const StabilizerMixture& rho, const StabilizerMixture& sigma);

/// |<a|b>| for two pure stabilizer states; the groups need not commute.
DyadicValue pure_overlap(const StabilizerMixture& a, const StabilizerMixture& b);

/// Tr(rho sigma^(order-1)) / Tr(rho^order), sigma = (Oi^dag Oj) rho (Oj^dag Oi).
DyadicValue renyi_correlator(const StabilizerMixture& rho, const PauliOperator& oi, const PauliOperator& oj,
                             int order);

/// Tr(rho sigma^(order-1)) / Tr(rho^order) for two commuting stabilizer mixtures.
DyadicValue renyi_ratio(const StabilizerMixture& rho, const StabilizerMixture& sigma, int order);

/// Rank of the group generated by the union, or nullopt if it contains -I.
std::optional<std::size_t> joint_rank(const StabilizerMixture& a, const StabilizerMixture& b);

}  // namespace catlab
