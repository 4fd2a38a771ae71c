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

#include "catlab/gf2.hpp"

#include <bit>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace catlab::gf2 {

namespace {
std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }
}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

BitVector BitVector::from_string(const std::string& bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BitVector::from_string: expected 0/1, got '" + bits + "'");
    }
  }
  return v;
}

void BitVector::set(std::size_t i, bool value) {
  uint64_t mask = uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector xor: size mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector and: size mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

bool BitVector::any() const {
  for (uint64_t w : words_) {
    if (w) return true;
  }
  return false;
}

std::size_t BitVector::popcount() const {
  std::size_t total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) throw std::invalid_argument("BitVector dot: size mismatch");
  uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  uint64_t mask = uint64_t{1} << (c & 63);
  uint64_t& w = data_[r * stride_ + (c >> 6)];
  w = value ? (w | mask) : (w & ~mask);
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  auto words = v.words();
  for (std::size_t w = 0; w < stride_; ++w) words[w] = data_[r * stride_ + w];
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw std::invalid_argument("BitMatrix::set_row: length mismatch");
  auto words = v.words();
  for (std::size_t w = 0; w < stride_; ++w) data_[r * stride_ + w] = words[w];
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
  for (std::size_t w = 0; w < stride_; ++w) data_[dst * stride_ + w] ^= data_[src * stride_ + w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t w = 0; w < stride_; ++w) std::swap(data_[a * stride_ + w], data_[b * stride_ + w]);
}

BitVector BitMatrix::multiply(const BitVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("BitMatrix::multiply: shape mismatch");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    uint64_t acc = 0;
    auto xw = x.words();
    for (std::size_t w = 0; w < stride_; ++w) acc ^= data_[r * stride_ + w] & xw[w];
    out.set(r, std::popcount(acc) & 1);
  }
  return out;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r, true);
    }
  }
  return t;
}

RowEchelon row_reduce(BitMatrix m) {
  RowEchelon out;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t found = m.rows();
    for (std::size_t r = pivot_row; r < m.rows(); ++r) {
      if (m.get(r, c)) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    m.swap_rows(found, pivot_row);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != pivot_row && m.get(r, c)) m.xor_row_into(pivot_row, r);
    }
    out.pivots.push_back(c);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const BitMatrix& m) { return row_reduce(m).pivots.size(); }

std::optional<BitVector> solve(const BitMatrix& a, const BitVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("gf2::solve: b length must equal rows(A)");
  // Augment [A | b] and reduce; the pivot columns of A carry the solution.
  BitMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a.get(r, c)) aug.set(r, c, true);
    }
    aug.set(r, a.cols(), b.get(r));
  }
  RowEchelon ech = row_reduce(std::move(aug));
  BitVector x(a.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    if (ech.pivots[i] == a.cols()) return std::nullopt;
    x.set(ech.pivots[i], ech.reduced.get(i, a.cols()));
  }
  return x;
}

std::vector<BitVector> nullspace(const BitMatrix& a) {
  RowEchelon ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector v(a.cols());
    v.set(free, true);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      if (ech.reduced.get(i, free)) v.set(ech.pivots[i], true);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace catlab::gf2

namespace catlab::zmod {

namespace {

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("zmod: integer overflow");
  return out;
}

int64_t checked_sub(int64_t a, int64_t b) {
  int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("zmod: integer overflow");
  return out;
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("zmod: integer overflow");
  return out;
}

// row_dst -= q * row_src
void row_axpy(IntMatrix& m, std::size_t src, std::size_t dst, int64_t q) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    m.at(dst, c) = checked_sub(m.at(dst, c), checked_mul(q, m.at(src, c)));
  }
}

// col_dst -= q * col_src
void col_axpy(IntMatrix& m, std::size_t src, std::size_t dst, int64_t q) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    m.at(r, dst) = checked_sub(m.at(r, dst), checked_mul(q, m.at(r, src)));
  }
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}

int64_t inverse_mod(int64_t a, int64_t m) {
  // Extended Euclid; caller guarantees gcd(a, m) = 1.
  int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::logic_error("inverse_mod: not invertible");
  return mod(x, m);
}

}  // namespace

int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("IntMatrix multiply: shape mismatch");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      int64_t a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        out.at(r, c) = checked_add(out.at(r, c), checked_mul(a, other.at(k, c)));
      }
    }
  }
  return out;
}

std::vector<int64_t> IntMatrix::multiply(std::span<const int64_t> x) const {
  if (x.size() != cols_) throw std::invalid_argument("IntMatrix::multiply: shape mismatch");
  std::vector<int64_t> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] = checked_add(out[r], checked_mul(at(r, c), x[c]));
  }
  return out;
}

IntMatrixModM::IntMatrixModM(std::size_t rows, std::size_t cols, int64_t modulus)
    : modulus_(modulus), entries_(rows, cols) {
  if (modulus < 2) throw std::invalid_argument("IntMatrixModM: modulus must be >= 2");
}

IntMatrixModM::IntMatrixModM(const IntMatrix& lift, int64_t modulus)
    : IntMatrixModM(lift.rows(), lift.cols(), modulus) {
  for (std::size_t r = 0; r < lift.rows(); ++r) {
    for (std::size_t c = 0; c < lift.cols(); ++c) entries_.at(r, c) = mod(lift.at(r, c), modulus);
  }
}

void IntMatrixModM::set(std::size_t r, std::size_t c, int64_t value) { entries_.at(r, c) = mod(value, modulus_); }

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (int64_t d : diagonal) {
    if (d != 0) ++r;
  }
  return r;
}

SmithForm smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm out{{}, IntMatrix::identity(m), IntMatrix::identity(n)};
  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    while (true) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::size_t pr = m, pc = n;
      int64_t best = 0;
      for (std::size_t r = t; r < m; ++r) {
        for (std::size_t c = t; c < n; ++c) {
          int64_t v = std::llabs(a.at(r, c));
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pr = r;
            pc = c;
          }
        }
      }
      if (best == 0) {
        for (std::size_t i = t; i < k; ++i) out.diagonal.push_back(0);
        return out;
      }
      swap_rows(a, pr, t);
      swap_rows(out.left, pr, t);
      swap_cols(a, pc, t);
      swap_cols(out.right, pc, t);

      bool clean = true;
      const int64_t p = a.at(t, t);
      for (std::size_t r = t + 1; r < m; ++r) {
        int64_t q = a.at(r, t) / p;
        if (q != 0) {
          row_axpy(a, t, r, q);
          row_axpy(out.left, t, r, q);
        }
        if (a.at(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        int64_t q = a.at(t, c) / p;
        if (q != 0) {
          col_axpy(a, t, c, q);
          col_axpy(out.right, t, c, q);
        }
        if (a.at(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divisible = true;
      for (std::size_t r = t + 1; r < m && divisible; ++r) {
        for (std::size_t c = t + 1; c < n; ++c) {
          if (a.at(r, c) % p != 0) {
            row_axpy(a, r, t, -1);
            row_axpy(out.left, r, t, -1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (a.at(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) a.at(t, c) = -a.at(t, c);
      for (std::size_t c = 0; c < m; ++c) out.left.at(t, c) = -out.left.at(t, c);
    }
    out.diagonal.push_back(a.at(t, t));
  }
  return out;
}

SmithForm smith_normal_form(const IntMatrixModM& a) {
  const int64_t modulus = a.modulus();
  SmithForm snf = smith_normal_form(a.entries());
  for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
    int64_t d = mod(snf.diagonal[i], modulus);
    int64_t g = std::gcd(d, modulus);  // gcd(0, M) = M
    if (g == modulus) {
      snf.diagonal[i] = 0;
      continue;
    }
    // d = u * g for some unit u; rescale the column so the entry is exactly g.
    int64_t unit = 0;
    for (int64_t u = 1; u < modulus; ++u) {
      if (std::gcd(u, modulus) == 1 && mod(u * g, modulus) == d) {
        unit = u;
        break;
      }
    }
    if (unit == 0) throw std::logic_error("smith_normal_form mod M: no unit found");
    int64_t inv = inverse_mod(unit, modulus);
    for (std::size_t r = 0; r < snf.right.rows(); ++r) {
      snf.right.at(r, i) = mod(checked_mul(mod(snf.right.at(r, i), modulus), inv), modulus);
    }
    snf.diagonal[i] = g;
  }
  for (std::size_t r = 0; r < snf.left.rows(); ++r) {
    for (std::size_t c = 0; c < snf.left.cols(); ++c) snf.left.at(r, c) = mod(snf.left.at(r, c), modulus);
  }
  for (std::size_t r = 0; r < snf.right.rows(); ++r) {
    for (std::size_t c = 0; c < snf.right.cols(); ++c) snf.right.at(r, c) = mod(snf.right.at(r, c), modulus);
  }
  return snf;
}

std::optional<std::vector<int64_t>> solve_mod(const SmithForm& snf, std::size_t cols,
                                              std::span<const int64_t> b, int64_t modulus) {
  const std::size_t rows = snf.left.rows();
  if (b.size() != rows) throw std::invalid_argument("solve_mod: b length must equal rows(A)");
  // c = U b (mod M), computed with reduced operands to stay in range.
  std::vector<int64_t> c(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    int64_t acc = 0;
    for (std::size_t k = 0; k < rows; ++k) {
      acc = mod(acc + checked_mul(mod(snf.left.at(r, k), modulus), mod(b[k], modulus)), modulus);
    }
    c[r] = acc;
  }
  std::vector<int64_t> t(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    int64_t s = i < snf.diagonal.size() ? mod(snf.diagonal[i], modulus) : 0;
    int64_t g = std::gcd(s, modulus);
    if (c[i] % g != 0) return std::nullopt;
    if (i >= cols || s == 0) continue;
    int64_t reduced_mod = modulus / g;
    if (reduced_mod == 1) continue;
    t[i] = mod(checked_mul(c[i] / g, inverse_mod(s / g, reduced_mod)), reduced_mod);
  }
  std::vector<int64_t> x(cols, 0);
  for (std::size_t r = 0; r < cols; ++r) {
    int64_t acc = 0;
    for (std::size_t k = 0; k < cols; ++k) {
      acc = mod(acc + checked_mul(mod(snf.right.at(r, k), modulus), t[k]), modulus);
    }
    x[r] = acc;
  }
  return x;
}

std::optional<std::vector<int64_t>> solve_mod(const IntMatrix& a, std::span<const int64_t> b, int64_t modulus) {
  return solve_mod(smith_normal_form(a), a.cols(), b, modulus);
}

}  // namespace catlab::zmod
