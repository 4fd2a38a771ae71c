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
#include <cstdint>
#include <optional>
#include <vector>

#include "catlab/gf2.hpp"
#include "json.hpp"

namespace catlab {

/// Z_{n_1} x ... x Z_{n_m}. Elements are indexed lexicographically with the
/// first factor most significant.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<int64_t> factors);

  const std::vector<int64_t>& factors() const { return factors_; }
  std::size_t order() const { return order_; }
  /// Least common multiple of the factors.
  int64_t exponent() const;

  std::vector<int64_t> element(std::size_t index) const;
  std::size_t index(const std::vector<int64_t>& element) const;
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;
  std::size_t subtract(std::size_t a, std::size_t b) const { return add(a, negate(b)); }
  std::size_t identity() const { return 0; }

  bool operator==(const FiniteAbelianGroup&) const = default;

 private:
  static constexpr std::size_t kAddTableLimit = 4096;
  std::vector<int64_t> factors_;
  std::size_t order_ = 1;
  std::vector<std::size_t> add_table_;
};

/// G-invariant homogeneous cochain nu(g_0, ..., g_d) with values in Q/Z.
///
/// Stored as the table t(g_1, ..., g_d) = nu(e, g_1, ..., g_d) of numerators
/// over a common denominator, so nu(g_0, ..., g_d) = t(g_1 - g_0, ..., g_d - g_0).
class Cochain {
 public:
  Cochain() = default;
  /// Zero cochain.
  Cochain(FiniteAbelianGroup group, std::size_t degree, int64_t denominator = 1);
  Cochain(FiniteAbelianGroup group, std::size_t degree, int64_t denominator, std::vector<int64_t> numerators);

  const FiniteAbelianGroup& group() const { return group_; }
  std::size_t degree() const { return degree_; }
  int64_t denominator() const { return den_; }
  const std::vector<int64_t>& numerators() const { return num_; }
  std::size_t size() const { return num_.size(); }

  /// Flat index of nu(e, g_1, ..., g_d), g_1 most significant.
  std::size_t table_index(const std::vector<std::size_t>& g) const;
  std::vector<std::size_t> table_tuple(std::size_t index) const;
  /// Numerator of nu(g_0, ..., g_d) over denominator().
  int64_t value(const std::vector<std::size_t>& g) const;
  /// e^(2 pi i nu(g_0, ..., g_d)).
  std::complex<double> phase(const std::vector<std::size_t>& g) const;

  /// Same cochain with denominator a multiple of the current one.
  Cochain rescaled(int64_t denominator) const;
  /// Reduces to the smallest denominator.
  Cochain reduced() const;
  Cochain operator+(const Cochain& other) const;
  Cochain operator-(const Cochain& other) const;
  Cochain scaled(int64_t k) const;
  bool is_zero() const;
  bool operator==(const Cochain& other) const;

  nlohmann::json to_json() const;

 private:
  FiniteAbelianGroup group_;
  std::size_t degree_ = 0;
  int64_t den_ = 1;
  std::vector<int64_t> num_;
};

/// Integer matrix of the coboundary from degree d to degree d + 1 cochains.
zmod::IntMatrix coboundary_matrix(const FiniteAbelianGroup& g, std::size_t degree);

Cochain coboundary(const Cochain& c);
bool is_cocycle(const Cochain& c);

/// Coefficients: U(1) (i.e. Q/Z values) or Z_M (values k/M).
struct Coefficients {
  int64_t modulus = 0;  // 0 means U(1)
  static Coefficients u1() { return {0}; }
  static Coefficients zmod(int64_t m) { return {m}; }
};

struct CohomologyGroup {
  std::size_t degree = 0;
  Coefficients coefficients;
  /// Invariant factors (each > 1); the group is the product of Z_f.
  std::vector<int64_t> factors;
  /// Cocycle generating each factor.
  std::vector<Cochain> representatives;
  std::size_t order() const;
};

/// H^d(G, coefficients) for d >= 1.
CohomologyGroup cohomology_group(const FiniteAbelianGroup& g, std::size_t degree,
                                 Coefficients coefficients = Coefficients::u1());

/// Coordinates of a U(1) cocycle's class against cohomology_group(g, d).factors.
std::vector<int64_t> class_coordinates(const Cochain& cocycle);
/// Smallest L >= 1 with L * nu a coboundary (U(1) coefficients).
int64_t class_order(const Cochain& cocycle);
/// Some mu with coboundary(mu) == c, if c is a U(1) coboundary.
std::optional<Cochain> coboundary_preimage(const Cochain& c);

/// Representative of the same class with L * nu == 0 pointwise and, for
/// degree >= 2, nu(e, g, ..., g) == 0 for every g. Throws std::logic_error if
/// the linear systems have no solution.
Cochain normalize_cocycle(const Cochain& cocycle);
/// True when both normalization conditions hold for the class order L.
bool is_normalized(const Cochain& cocycle);

/// Cocycle of Z2 x Z2: nu(e, g, h) = (1/2) g_b (h_a - g_a), a the first factor.
Cochain cluster_cocycle();

/// Diagonal gate e^(2 pi i s nu(e, g_1, ..., g_d)) on d qudits.
struct DiagonalGate {
  std::vector<std::size_t> sites;
  int sign = 1;
  /// Local index sum_j g(sites[j]) |G|^j.
  std::vector<std::complex<double>> diagonal;
};

struct CocycleCircuit {
  std::size_t site_dim = 0;
  std::size_t num_sites = 0;
  std::vector<DiagonalGate> gates;
};

/// Compiles a degree-1 or degree-2 cocycle on a ring of n qudits: degree 1
/// gives a gate per site, degree 2 a gate per cyclically oriented edge
/// (i, i+1 mod n), all with sign +1.
CocycleCircuit compile_cocycle_circuit(const Cochain& cocycle, std::size_t n);

}  // namespace catlab
