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
#include <initializer_list>
#include <string>
#include <vector>

#include "catlab/gf2.hpp"

namespace catlab {

/// Sorted, deduplicated list of flat site indices.
class SiteSet {
 public:
  SiteSet() = default;
  SiteSet(std::initializer_list<std::size_t> sites);
  explicit SiteSet(std::vector<std::size_t> sites);

  const std::vector<std::size_t>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  bool contains(std::size_t site) const;
  bool intersects(const SiteSet& other) const;
  SiteSet united(const SiteSet& other) const;
  auto begin() const { return sites_.begin(); }
  auto end() const { return sites_.end(); }
  bool operator==(const SiteSet&) const = default;

 private:
  std::vector<std::size_t> sites_;
};

/// n-qubit Pauli operator i^phase * (P_0 ⊗ P_1 ⊗ ... ), each P_j in {I, X, Y, Z}.
///
/// Bits (x_j, z_j) encode P_j as I=(0,0), X=(1,0), Z=(0,1), Y=(1,1) with Y the
/// Hermitian Pauli, so the operator is Hermitian iff the phase is even.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(std::size_t n);

  static PauliOperator identity(std::size_t n) { return PauliOperator(n); }
  /// Single-site Pauli; `kind` is one of 'I', 'X', 'Y', 'Z'.
  static PauliOperator single(std::size_t n, std::size_t site, char kind);
  /// Product of the same Pauli kind on the given sites.
  static PauliOperator on_sites(std::size_t n, const std::vector<std::size_t>& sites, char kind);
  /// Parses the text form, e.g. "+XIZY", "-iZZ", "XX" (implicit +).
  static PauliOperator parse(const std::string& text);

  std::size_t num_qubits() const { return n_; }
  const gf2::BitVector& x() const { return x_; }
  const gf2::BitVector& z() const { return z_; }
  gf2::BitVector& x() { return x_; }
  gf2::BitVector& z() { return z_; }
  /// Exponent k of the i^k prefactor, always in [0, 4).
  uint8_t phase() const { return phase_; }
  void set_phase(int k) { phase_ = static_cast<uint8_t>(((k % 4) + 4) % 4); }
  void add_phase(int k) { set_phase(phase_ + k); }

  char kind_at(std::size_t site) const;
  void set_kind(std::size_t site, char kind);

  bool is_hermitian() const { return (phase_ & 1) == 0; }
  bool is_identity_up_to_phase() const { return x_.none() && z_.none(); }
  std::size_t weight() const;

  PauliOperator dagger() const;
  /// Operator restricted to `sites`, re-indexed 0..sites.size()-1. Phase kept.
  PauliOperator restricted(const SiteSet& sites) const;
  /// Places a local operator on `sites` of an n-qubit register.
  static PauliOperator embedded(const PauliOperator& local, const SiteSet& sites, std::size_t n);
  /// The 2n-bit symplectic vector (x | z).
  gf2::BitVector symplectic() const;

  std::string to_string() const;

  bool operator==(const PauliOperator&) const = default;

 private:
  std::size_t n_ = 0;
  gf2::BitVector x_;
  gf2::BitVector z_;
  uint8_t phase_ = 0;
};

/// Exact operator product p * q, including the phase.
PauliOperator multiply(const PauliOperator& p, const PauliOperator& q);
PauliOperator operator*(const PauliOperator& p, const PauliOperator& q);

/// True iff p and q commute (symplectic form vanishes).
bool commutes(const PauliOperator& p, const PauliOperator& q);

SiteSet support(const PauliOperator& p);

}  // namespace catlab
