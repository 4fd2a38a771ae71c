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
#include <vector>

#include <Eigen/Dense>

#include "catlab/clifford.hpp"
#include "catlab/pauli.hpp"
#include "catlab/stabilizer.hpp"

namespace catlab::dense {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Maximum number of amplitudes; CATLAB_DENSE_LIMIT overrides 2^20.
std::size_t amplitude_limit();
/// Maximum dimension of a full eigensolve; CATLAB_DENSE_EIG_LIMIT overrides 2^14.
std::size_t eig_limit();

/// q^N, or throws when above the amplitude limit.
std::size_t checked_dimension(std::size_t q, std::size_t n);

/// A matrix acting on an ordered list of sites. Local index is
/// sum_j digit(sites[j]) * q^j, so sites[0] is the least significant digit.
struct LocalOperator {
  std::vector<std::size_t> sites;
  Matrix matrix;
};

using DenseCircuit = std::vector<LocalOperator>;

/// Pure state of N qudits of dimension q. Site 0 is the least significant digit.
class DenseState {
 public:
  DenseState() = default;
  /// |0...0>.
  DenseState(std::size_t q, std::size_t n);
  static DenseState from_amplitudes(std::size_t q, std::size_t n, Vector amplitudes);
  static DenseState product(std::size_t q, std::size_t n, const Vector& local);
  static DenseState basis(std::size_t q, const std::vector<std::size_t>& digits);

  std::size_t site_dim() const { return q_; }
  std::size_t num_sites() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }

  /// Applies a unitary; throws if it is not unitary within 1e-10.
  void apply(const LocalOperator& u);
  void apply(const DenseCircuit& c);
  /// Diagonal unitary given by its local phases.
  void apply_diagonal(const std::vector<std::size_t>& sites, const std::vector<Complex>& diagonal);
  /// Qubit states only.
  void apply_pauli(const PauliOperator& p);
  /// Site j moves to image[j].
  void permute_sites(const std::vector<std::size_t>& image);

  /// <this|other>.
  Complex overlap(const DenseState& other) const;
  /// This state on the low sites, other on the high sites.
  DenseState tensor(const DenseState& other) const;

 private:
  std::size_t q_ = 2;
  std::size_t n_ = 0;
  Vector amps_;
};

/// Sum of local Hermitian terms.
class Hamiltonian {
 public:
  Hamiltonian() = default;
  Hamiltonian(std::size_t q, std::size_t n) : q_(q), n_(n) {}

  std::size_t site_dim() const { return q_; }
  std::size_t num_sites() const { return n_; }
  const std::vector<LocalOperator>& terms() const { return terms_; }

  void add_term(LocalOperator term);
  /// coefficient * p, qubit Hamiltonians only.
  void add_pauli(double coefficient, const PauliOperator& p);
  void append(const Hamiltonian& other);

  Vector apply(const Vector& v) const;
  Matrix to_matrix() const;

 private:
  std::size_t q_ = 2;
  std::size_t n_ = 0;
  std::vector<LocalOperator> terms_;
};

struct GroundSpace {
  double energy = 0;
  /// Distance from the ground energy to the next distinct level (0 if none).
  double gap = 0;
  std::vector<Vector> basis;
};

/// Full Hermitian eigensolve; the ground space holds all eigenvectors within
/// `tolerance` of the minimum.
GroundSpace ground_state(const Hamiltonian& h, double tolerance = 1e-8);

/// A simultaneous +1 eigenvector of every listed symmetry inside span(basis).
DenseState symmetrize_in_ground_space(std::size_t q, std::size_t n, const std::vector<Vector>& basis,
                                    const std::vector<DenseCircuit>& symmetries);

Matrix density_from_mixture(const std::vector<double>& weights, const std::vector<DenseState>& states);
Matrix density_of(const DenseState& s);
/// Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double fidelity(const Matrix& rho, const Matrix& sigma);
/// Tr(rho sigma^(order-1)) / Tr(rho^order).
double renyi_ratio(const Matrix& rho, const Matrix& sigma, int order);

/// Matrix of a Pauli on the full register.
Matrix pauli_matrix(const PauliOperator& p);
/// Local unitary of a Clifford gate on its targets (up to global phase).
LocalOperator gate_unitary(const CliffordGate& g);
DenseCircuit circuit_unitaries(const CliffordCircuit& c);
/// Pure stabilizer state vector (up to global phase).
DenseState state_of(const StabilizerMixture& s);
/// Density matrix 2^(k-n) prod (1 + g_j).
Matrix density_of(const StabilizerMixture& s);

/// max |<a|b>| norm check helper: |<a|b>|.
double overlap_modulus(const DenseState& a, const DenseState& b);

/// Operator matrix of a local operator on the full register.
Matrix embed(const LocalOperator& op, std::size_t q, std::size_t n);

}  // namespace catlab::dense
