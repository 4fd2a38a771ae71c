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

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catlab/clifford.hpp"
#include "catlab/dense.hpp"
#include "catlab/models.hpp"
#include "catlab/stabilizer.hpp"
#include "json.hpp"

namespace catlab {

/// Raised when invariant regions are too close or too small.
class RegionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// U (x) U^-1 on registers A (qubits 0..n-1) and B (n..2n-1).
/// Time order: the SWAP layer first, then the conjugated SWAPs v_i, packed
/// into disjoint physical layers.
struct DoubledCircuit {
  CliffordCircuit circuit;
  std::size_t swap_layers = 1;
  std::size_t conjugated_layers = 0;
  std::size_t logical_layers() const { return 2; }
  std::size_t depth() const { return circuit.depth(); }
};

struct DenseDoubledCircuit {
  std::size_t site_dim = 2;
  std::size_t num_sites = 0;  // per register
  dense::DenseCircuit gates;
  std::vector<std::size_t> layer;  // physical layer of each gate
  std::size_t depth() const;
};

/// Locality radius of a QCA: max over single-site X_i, Z_i of the lattice
/// distance from i to the support of U P U^-1.
std::size_t qca_spread(const CliffordQca& u, const LatticeSpec& lattice);
std::size_t qca_spread(const CocycleCircuit& u, const LatticeSpec& lattice);

DoubledCircuit build_doubled_fdqc(const CliffordQca& u, const LatticeSpec& lattice, std::size_t max_spread = 3);
DenseDoubledCircuit build_doubled_dense(const CocycleCircuit& u, const LatticeSpec& lattice, std::size_t max_spread = 3);

/// Gate commutes with every generator restricted to the gate's support.
bool audit_gate_symmetric(const CliffordGate& gate, const SymmetryRep& symmetry);
bool audit_gate_symmetric(const dense::LocalOperator& gate, const SymmetryRep& symmetry, double tol = 1e-10);

struct CatalysisReport {
  std::string model;
  std::string catalyst;
  Engine engine = Engine::Stabilizer;
  bool mixed = false;
  std::size_t depth = 0;
  std::size_t logical_layers = 2;
  std::size_t max_support = 0;
  std::size_t gates = 0;
  std::size_t gates_failing_audit = 0;
  bool audit_pass = false;
  std::string match_kind;  // "exact", "operator-equality", "overlap-modulus"
  double overlap = 0;
  bool state_match = false;
  double wall_ms = 0;
  bool pass() const { return audit_pass && state_match; }
  nlohmann::json to_json() const;
};

CatalysisReport verify_catalysis(const ModelBundle& bundle, const Catalyst& catalyst);
CatalysisReport verify_catalysis(const ModelBundle& bundle, const Catalyst& catalyst, const DoubledCircuit& doubled);

/// Half-open interval [start, start + length) on a ring.
struct Interval {
  std::size_t start = 0;
  std::size_t length = 0;
  SiteSet sites(std::size_t n) const;
};

struct InvariantTable {
  std::size_t group_order = 0;
  Interval a, b;
  /// entries[g * order + h]; exact powers of i when `exact`.
  std::vector<std::complex<double>> entries;
  std::vector<int> i_powers;
  bool exact = false;
  std::complex<double> at(std::size_t g, std::size_t h) const { return entries[g * group_order + h]; }
  bool all_trivial(double tol = 1e-10) const;
  /// c(g g', h) = c(g, h) c(g', h) and the same in h.
  bool is_bilinear(const FiniteAbelianGroup& group, double tol = 1e-10) const;
  nlohmann::json to_json(const FiniteAbelianGroup& group) const;
};

/// Regions default to A = [0, n/2), B = [n/4, 3n/4).
std::pair<Interval, Interval> default_regions(std::size_t n);

InvariantTable spt_invariant(const CliffordQca& u, const SymmetryRep& symmetry, const Interval& a, const Interval& b);
/// Dense evaluation on a fixed random vector; works for every entangler kind.
InvariantTable spt_invariant_dense(const Entangler& u, const SymmetryRep& symmetry, const Interval& a, const Interval& b);

/// Endpoint operators (L, R) supported near the ends of Gamma.
struct LocalizationWitness {
  PauliOperator left;
  PauliOperator right;
  bool trivial() const { return left.is_identity_up_to_phase() && right.is_identity_up_to_phase(); }
};

/// Endpoint regions: [a - r, a + r) and [b - r + 1, b + r] for Gamma = [a, b].
/// Requires |Gamma| >= 4r and a complement of at least 4r sites.
std::optional<LocalizationWitness> strong_localization(const StabilizerMixture& rho, const SymmetryRep& symmetry,
                                                       std::size_t generator, const Interval& gamma,
                                                       std::size_t radius);
std::optional<LocalizationWitness> weak_localization(const StabilizerMixture& rho, const SymmetryRep& symmetry,
                                                     std::size_t generator, const Interval& gamma,
                                                     std::size_t radius);

/// F(rho, O_i O_j^dag rho O_j O_i^dag).
DyadicValue fidelity_correlator(const StabilizerMixture& rho, const PauliOperator& oi, const PauliOperator& oj);
double fidelity_correlator(const dense::Matrix& rho, const dense::Matrix& oi, const dense::Matrix& oj);

struct DisorderParameter {
  int expectation = 0;
  DyadicValue fidelity;
};
/// Tr(rho U) and F(rho, U rho U) for a Pauli string U.
DisorderParameter disorder_parameter(const StabilizerMixture& rho, const PauliOperator& string);

}  // namespace catlab
