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
#include <string>
#include <variant>
#include <vector>

#include "catlab/pauli.hpp"

namespace catlab {

enum class GateKind { H, S, Sdg, X, Y, Z, CZ, CNOT, SWAP, Tableau };

std::string gate_name(GateKind kind);

/// A local Clifford gate. Targets are ordered (CNOT: control, target).
///
/// A Tableau gate is given by the images of X_j and Z_j for each target j,
/// as Paulis on the targets (local indexing in target order).
class CliffordGate {
 public:
  static CliffordGate named(GateKind kind, std::vector<std::size_t> targets);
  static CliffordGate tableau(std::vector<std::size_t> targets, std::vector<PauliOperator> x_images,
                              std::vector<PauliOperator> z_images);

  GateKind kind() const { return kind_; }
  const std::vector<std::size_t>& targets() const { return targets_; }
  SiteSet support() const { return SiteSet(targets_); }
  const std::vector<PauliOperator>& x_images() const { return x_images_; }
  const std::vector<PauliOperator>& z_images() const { return z_images_; }

  /// g P g^dagger.
  PauliOperator conjugate(const PauliOperator& p) const;
  CliffordGate inverse() const;
  /// Same gate expressed as an explicit tableau (used for dense conversion).
  CliffordGate as_tableau() const;
  /// Same action with targets relabelled through `map` (target t -> map[t]).
  CliffordGate relabelled(const std::vector<std::size_t>& map) const;

  std::string describe() const;

 private:
  CliffordGate() = default;
  GateKind kind_ = GateKind::H;
  std::vector<std::size_t> targets_;
  std::vector<PauliOperator> x_images_;
  std::vector<PauliOperator> z_images_;
};

using GateLayer = std::vector<CliffordGate>;

/// Ordered layers of gates; gates in one layer have disjoint supports.
/// Layer 0 acts first.
class CliffordCircuit {
 public:
  CliffordCircuit() = default;
  explicit CliffordCircuit(std::size_t n) : n_(n) {}

  std::size_t num_qubits() const { return n_; }
  const std::vector<GateLayer>& layers() const { return layers_; }
  std::size_t depth() const { return layers_.size(); }
  std::size_t gate_count() const;
  std::size_t max_support() const;

  /// Appends a layer after validating range and disjointness.
  void add_layer(GateLayer layer);
  /// Appends gates greedily: each gate goes to the earliest layer after the
  /// last layer touching its support.
  void append_packed(const CliffordGate& gate);
  void append(const CliffordCircuit& other);

  PauliOperator conjugate(const PauliOperator& p) const;
  CliffordCircuit inverse() const;

 private:
  std::size_t n_ = 0;
  std::vector<GateLayer> layers_;
};

/// Site permutation QCA: site j is moved to image[j].
class SitePermutation {
 public:
  SitePermutation() = default;
  explicit SitePermutation(std::vector<std::size_t> image);
  /// Translation j -> j + shift on a ring of n sites.
  static SitePermutation ring_shift(std::size_t n, long shift);

  std::size_t num_qubits() const { return image_.size(); }
  const std::vector<std::size_t>& image() const { return image_; }
  PauliOperator conjugate(const PauliOperator& p) const;
  SitePermutation inverse() const;

 private:
  std::vector<std::size_t> image_;
};

/// A Clifford locality-preserving unitary: either an index permutation or a
/// finite-depth Clifford circuit.
class CliffordQca {
 public:
  CliffordQca() = default;
  CliffordQca(SitePermutation p) : impl_(std::move(p)) {}
  CliffordQca(CliffordCircuit c) : impl_(std::move(c)) {}

  std::size_t num_qubits() const;
  PauliOperator conjugate(const PauliOperator& p) const;
  PauliOperator conjugate_inverse(const PauliOperator& p) const;
  CliffordQca inverse() const;
  bool is_permutation() const { return std::holds_alternative<SitePermutation>(impl_); }
  const SitePermutation* permutation() const { return std::get_if<SitePermutation>(&impl_); }
  const CliffordCircuit* circuit() const { return std::get_if<CliffordCircuit>(&impl_); }

 private:
  std::variant<SitePermutation, CliffordCircuit> impl_;
};

/// Validates that images form a symplectic, Hermitian local map.
bool is_valid_tableau(const std::vector<PauliOperator>& x_images, const std::vector<PauliOperator>& z_images);

}  // namespace catlab
