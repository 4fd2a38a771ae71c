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
#include <span>
#include <string>
#include <vector>

namespace catlab::gf2 {

/// Fixed-length vector over GF(2), packed into 64-bit words.
///
/// Bits beyond `size()` in the final word are always zero, so word-level
/// comparisons and popcounts are exact.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  static BitVector from_string(const std::string& bits);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value);
  void flip(std::size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  bool operator==(const BitVector& other) const = default;
  auto operator<=>(const BitVector& other) const = default;

  bool any() const;
  bool none() const { return !any(); }
  std::size_t popcount() const;
  /// Parity of the bitwise AND, i.e. the GF(2) dot product.
  bool dot(const BitVector& other) const;

  std::span<uint64_t> words() { return words_; }
  std::span<const uint64_t> words() const { return words_; }

  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<uint64_t> words_;
};

/// Dense row-major GF(2) matrix with packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value);

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  void xor_row_into(std::size_t src, std::size_t dst);
  void swap_rows(std::size_t a, std::size_t b);

  BitVector multiply(const BitVector& x) const;
  BitMatrix transposed() const;

  bool operator==(const BitMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<uint64_t> data_;
};

/// Reduced row-echelon form plus the pivot column of each nonzero row.
struct RowEchelon {
  BitMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon row_reduce(BitMatrix m);

std::size_t rank(const BitMatrix& m);

/// Solves A x = b. Free variables are set to zero, so the result is the
/// unique solution supported on pivot columns.
std::optional<BitVector> solve(const BitMatrix& a, const BitVector& b);

/// Basis of { x : A x = 0 }, one vector per free column.
std::vector<BitVector> nullspace(const BitMatrix& a);

}  // namespace catlab::gf2

namespace catlab::zmod {

/// Integer matrix (row-major, int64 entries). Arithmetic is overflow-checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  int64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& other) const;
  std::vector<int64_t> multiply(std::span<const int64_t> x) const;
  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int64_t> data_;
};

/// Matrix over Z_M with entries kept in [0, M).
class IntMatrixModM {
 public:
  IntMatrixModM(std::size_t rows, std::size_t cols, int64_t modulus);
  IntMatrixModM(const IntMatrix& lift, int64_t modulus);

  int64_t modulus() const { return modulus_; }
  std::size_t rows() const { return entries_.rows(); }
  std::size_t cols() const { return entries_.cols(); }
  int64_t at(std::size_t r, std::size_t c) const { return entries_.at(r, c); }
  void set(std::size_t r, std::size_t c, int64_t value);
  const IntMatrix& entries() const { return entries_; }

 private:
  int64_t modulus_;
  IntMatrix entries_;
};

int64_t mod(int64_t a, int64_t m);

/// Smith normal form: left * A * right = diag(diagonal), with
/// diagonal[i] | diagonal[i+1]. Zero invariant factors come last.
struct SmithForm {
  std::vector<int64_t> diagonal;  // length min(rows, cols)
  IntMatrix left;                 // rows x rows, unimodular
  IntMatrix right;                // cols x cols, unimodular
  std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Smith form over the ring Z_M. Invariant factors are divisors of M
/// (a factor equal to M stands for zero); transforms are invertible mod M.
SmithForm smith_normal_form(const IntMatrixModM& a);

/// Some x with A x = b (mod M), or nullopt. Uses the integer Smith form with
/// free coordinates set to zero, so b = 0 always yields x = 0.
std::optional<std::vector<int64_t>> solve_mod(const IntMatrix& a, std::span<const int64_t> b,
                                              int64_t modulus);
std::optional<std::vector<int64_t>> solve_mod(const SmithForm& snf, std::size_t cols,
                                              std::span<const int64_t> b, int64_t modulus);

}  // namespace catlab::zmod
