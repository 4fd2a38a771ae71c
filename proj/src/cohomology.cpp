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

#include "catlab/cohomology.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace catlab {

using zmod::IntMatrix;
using zmod::mod;

namespace {

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

constexpr std::size_t kMaxTable = std::size_t{1} << 22;

void check_size(const FiniteAbelianGroup& g, std::size_t degree) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < degree + 1; ++i) {
    r *= g.order();
    if (r > kMaxTable) throw std::length_error("cochain table too large");
  }
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cochain arithmetic overflow");
  return r;
}

std::vector<int64_t> times(const IntMatrix& m, const std::vector<int64_t>& v) { return m.multiply(v); }

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int64_t> factors) : factors_(std::move(factors)) {
  order_ = 1;
  for (auto f : factors_) {
    if (f < 1) throw std::invalid_argument("cyclic factor must be >= 1");
    if (order_ > (std::size_t{1} << 62) / static_cast<std::size_t>(f)) throw std::invalid_argument("group too large");
    order_ *= static_cast<std::size_t>(f);
  }
  if (order_ > kAddTableLimit) return;
  add_table_.resize(order_ * order_);
  for (std::size_t a = 0; a < order_; ++a) {
    const auto ea = element(a);
    for (std::size_t b = 0; b < order_; ++b) {
      auto eb = element(b);
      for (std::size_t i = 0; i < ea.size(); ++i) eb[i] = (ea[i] + eb[i]) % factors_[i];
      add_table_[a * order_ + b] = index(eb);
    }
  }
}

int64_t FiniteAbelianGroup::exponent() const {
  int64_t e = 1;
  for (auto f : factors_) e = std::lcm(e, f);
  return e;
}

std::vector<int64_t> FiniteAbelianGroup::element(std::size_t index) const {
  if (index >= order_) throw std::out_of_range("group element index out of range");
  std::vector<int64_t> e(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    e[i] = static_cast<int64_t>(index % static_cast<std::size_t>(factors_[i]));
    index /= static_cast<std::size_t>(factors_[i]);
  }
  return e;
}

std::size_t FiniteAbelianGroup::index(const std::vector<int64_t>& element) const {
  if (element.size() != factors_.size()) throw std::invalid_argument("element has wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    idx = idx * static_cast<std::size_t>(factors_[i]) + static_cast<std::size_t>(mod(element[i], factors_[i]));
  return idx;
}

std::size_t FiniteAbelianGroup::add(std::size_t a, std::size_t b) const {
  if (!add_table_.empty()) return add_table_.at(a * order_ + b);
  auto ea = element(a);
  const auto eb = element(b);
  for (std::size_t i = 0; i < ea.size(); ++i) ea[i] = (ea[i] + eb[i]) % factors_[i];
  return index(ea);
}

std::size_t FiniteAbelianGroup::negate(std::size_t a) const {
  auto e = element(a);
  for (auto& v : e) v = -v;
  return index(e);
}

Cochain::Cochain(FiniteAbelianGroup group, std::size_t degree, int64_t denominator)
    : group_(std::move(group)), degree_(degree), den_(denominator) {
  if (den_ < 1) throw std::invalid_argument("denominator must be positive");
  check_size(group_, degree_ == 0 ? 0 : degree_ - 1);
  num_.assign(ipow(group_.order(), degree_), 0);
}

Cochain::Cochain(FiniteAbelianGroup group, std::size_t degree, int64_t denominator, std::vector<int64_t> numerators)
    : Cochain(std::move(group), degree, denominator) {
  if (numerators.size() != num_.size()) throw std::invalid_argument("cochain table has wrong size");
  for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = mod(numerators[i], den_);
}

std::size_t Cochain::table_index(const std::vector<std::size_t>& g) const {
  if (g.size() != degree_) throw std::invalid_argument("tuple has wrong length");
  std::size_t idx = 0;
  for (auto v : g) idx = idx * group_.order() + v;
  return idx;
}

std::vector<std::size_t> Cochain::table_tuple(std::size_t index) const {
  std::vector<std::size_t> g(degree_);
  for (std::size_t j = degree_; j-- > 0;) {
    g[j] = index % group_.order();
    index /= group_.order();
  }
  return g;
}

int64_t Cochain::value(const std::vector<std::size_t>& g) const {
  if (g.size() != degree_ + 1) throw std::invalid_argument("homogeneous tuple has wrong length");
  std::vector<std::size_t> rel(degree_);
  for (std::size_t j = 0; j < degree_; ++j) rel[j] = group_.subtract(g[j + 1], g[0]);
  return num_[table_index(rel)];
}

std::complex<double> Cochain::phase(const std::vector<std::size_t>& g) const {
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(value(g)) / static_cast<double>(den_));
}

Cochain Cochain::rescaled(int64_t denominator) const {
  if (denominator % den_ != 0) throw std::invalid_argument("new denominator must be a multiple");
  Cochain c(group_, degree_, denominator);
  for (std::size_t i = 0; i < num_.size(); ++i) c.num_[i] = checked_mul(num_[i], denominator / den_);
  return c;
}

Cochain Cochain::reduced() const {
  int64_t g = den_;
  for (auto v : num_) g = std::gcd(g, v);
  Cochain c(group_, degree_, den_ / g);
  for (std::size_t i = 0; i < num_.size(); ++i) c.num_[i] = num_[i] / g;
  return c;
}

Cochain Cochain::operator+(const Cochain& other) const {
  if (!(group_ == other.group_) || degree_ != other.degree_) throw std::invalid_argument("cochain shape mismatch");
  const int64_t d = std::lcm(den_, other.den_);
  Cochain a = rescaled(d), b = other.rescaled(d);
  for (std::size_t i = 0; i < num_.size(); ++i) a.num_[i] = mod(a.num_[i] + b.num_[i], d);
  return a.reduced();
}

Cochain Cochain::scaled(int64_t k) const {
  Cochain c = *this;
  for (auto& v : c.num_) v = mod(checked_mul(v, k), den_);
  return c.reduced();
}

Cochain Cochain::operator-(const Cochain& other) const { return *this + other.scaled(-1); }

bool Cochain::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](int64_t v) { return v == 0; });
}

bool Cochain::operator==(const Cochain& other) const { return (*this - other).is_zero(); }

nlohmann::json Cochain::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < num_.size(); ++i) {
    auto t = table_tuple(i);
    std::vector<std::size_t> tuple{group_.identity()};
    tuple.insert(tuple.end(), t.begin(), t.end());
    const int64_t g = std::gcd(num_[i], den_);
    entries.push_back({{"tuple", tuple}, {"num", num_[i] / g}, {"den", den_ / g}});
  }
  return {{"factors", group_.factors()}, {"degree", degree_}, {"entries", entries}};
}

IntMatrix coboundary_matrix(const FiniteAbelianGroup& g, std::size_t degree) {
  check_size(g, degree);
  const std::size_t q = g.order();
  const std::size_t cols = ipow(q, degree), rows = ipow(q, degree + 1);
  IntMatrix m(rows, cols);
  std::vector<std::size_t> full(degree + 2), omitted(degree + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    full[0] = g.identity();
    std::size_t t = r;
    for (std::size_t j = degree + 1; j >= 1; --j) {
      full[j] = t % q;
      t /= q;
    }
    for (std::size_t i = 0; i < degree + 2; ++i) {
      std::size_t k = 0;
      for (std::size_t j = 0; j < degree + 2; ++j)
        if (j != i) omitted[k++] = full[j];
      std::size_t col = 0;
      for (std::size_t j = 1; j < degree + 1; ++j) col = col * q + g.subtract(omitted[j], omitted[0]);
      m.at(r, col) += (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

Cochain coboundary(const Cochain& c) {
  auto d = coboundary_matrix(c.group(), c.degree());
  return Cochain(c.group(), c.degree() + 1, c.denominator(), times(d, c.numerators()));
}

bool is_cocycle(const Cochain& c) { return coboundary(c).is_zero(); }

std::size_t CohomologyGroup::order() const {
  std::size_t o = 1;
  for (auto f : factors) o *= static_cast<std::size_t>(f);
  return o;
}

CohomologyGroup cohomology_group(const FiniteAbelianGroup& g, std::size_t degree, Coefficients coefficients) {
  if (degree < 1) throw std::invalid_argument("cohomology degree must be >= 1");
  CohomologyGroup h;
  h.degree = degree;
  h.coefficients = coefficients;
  const auto d = coboundary_matrix(g, degree);
  const auto snf = zmod::smith_normal_form(d);
  const std::size_t r = snf.rank();
  auto column = [](const IntMatrix& m, std::size_t c) {
    std::vector<int64_t> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m.at(i, c);
    return v;
  };
  if (coefficients.modulus == 0) {
    for (std::size_t i = 0; i < r; ++i) {
      const int64_t s = snf.diagonal[i];
      if (s <= 1) continue;
      h.factors.push_back(s);
      h.representatives.emplace_back(g, degree, s, column(snf.right, i));
    }
    return h;
  }
  const int64_t m = coefficients.modulus;
  if (m < 2) throw std::invalid_argument("coefficient modulus must be >= 2");
  // Integer classes of degree d reduced mod m.
  const auto dprev = coboundary_matrix(g, degree - 1);
  const auto snf_prev = zmod::smith_normal_form(dprev);
  for (std::size_t i = 0; i < snf_prev.rank(); ++i) {
    const int64_t t = snf_prev.diagonal[i];
    const int64_t f = std::gcd(t, m);
    if (f <= 1) continue;
    auto image = times(dprev, column(snf_prev.right, i));
    for (auto& v : image) v /= t;
    h.factors.push_back(f);
    h.representatives.emplace_back(g, degree, m, image);
  }
  // Torsion of degree d + 1 integer classes.
  for (std::size_t i = 0; i < r; ++i) {
    const int64_t s = snf.diagonal[i];
    const int64_t f = std::gcd(s, m);
    if (f <= 1) continue;
    auto v = column(snf.right, i);
    for (auto& x : v) x = mod(checked_mul(mod(x, m), m / f), m);
    h.factors.push_back(f);
    h.representatives.emplace_back(g, degree, m, v);
  }
  return h;
}

std::vector<int64_t> class_coordinates(const Cochain& cocycle) {
  if (!is_cocycle(cocycle)) throw std::invalid_argument("not a cocycle");
  const auto d = coboundary_matrix(cocycle.group(), cocycle.degree());
  const auto snf = zmod::smith_normal_form(d);
  auto dx = times(d, cocycle.numerators());
  for (auto& v : dx) v /= cocycle.denominator();
  auto udx = times(snf.left, dx);
  std::vector<int64_t> coords;
  for (std::size_t i = 0; i < snf.rank(); ++i) {
    if (snf.diagonal[i] <= 1) continue;
    coords.push_back(mod(udx[i], snf.diagonal[i]));
  }
  return coords;
}

int64_t class_order(const Cochain& cocycle) {
  const auto coords = class_coordinates(cocycle);
  const auto d = coboundary_matrix(cocycle.group(), cocycle.degree());
  const auto snf = zmod::smith_normal_form(d);
  std::vector<int64_t> factors;
  for (std::size_t i = 0; i < snf.rank(); ++i)
    if (snf.diagonal[i] > 1) factors.push_back(snf.diagonal[i]);
  int64_t order = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) order = std::lcm(order, factors[i] / std::gcd(coords[i], factors[i]));
  return order;
}

std::optional<Cochain> coboundary_preimage(const Cochain& c) {
  if (c.degree() < 1) throw std::invalid_argument("degree-0 cochains are not coboundaries");
  const auto dprev = coboundary_matrix(c.group(), c.degree() - 1);
  const auto snf = zmod::smith_normal_form(dprev);
  const std::size_t r = snf.rank();
  int64_t k = 1;
  for (std::size_t i = 0; i < r; ++i) k = std::lcm(k, snf.diagonal[i]);
  const int64_t m = c.denominator();
  auto ux = times(snf.left, c.numerators());
  for (std::size_t i = r; i < ux.size(); ++i)
    if (mod(ux[i], m) != 0) return std::nullopt;
  std::vector<int64_t> w(dprev.cols(), 0);
  for (std::size_t i = 0; i < r; ++i) w[i] = checked_mul(mod(ux[i], checked_mul(m, snf.diagonal[i])), k / snf.diagonal[i]);
  auto mu = times(snf.right, w);
  Cochain out(c.group(), c.degree() - 1, checked_mul(m, k), mu);
  if (!(coboundary(out) == c)) throw std::logic_error("coboundary preimage check failed");
  return out;
}

Cochain normalize_cocycle(const Cochain& cocycle) {
  const int64_t l = class_order(cocycle);
  const std::size_t d = cocycle.degree();
  auto mu = coboundary_preimage(cocycle.scaled(l));
  if (!mu) throw std::logic_error("L * nu is not a coboundary");
  // nu' = nu - D(mu)/L, evaluated with the exact real lift of mu.
  const int64_t big = mu->denominator();  // M K
  const auto dprev = coboundary_matrix(cocycle.group(), d - 1);
  auto dmu = times(dprev, mu->numerators());
  const Cochain lifted = cocycle.rescaled(cocycle.denominator() * (big / cocycle.denominator()));
  std::vector<int64_t> nu_l(cocycle.size());
  for (std::size_t i = 0; i < nu_l.size(); ++i) {
    const int64_t w = checked_mul(lifted.numerators()[i], l) - dmu[i];
    if (w % big != 0) throw std::logic_error("finite-order normalization left a fractional remainder");
    nu_l[i] = mod(w / big, l);
  }
  Cochain finite(cocycle.group(), d, l, nu_l);
  if (d < 2) return finite.reduced();
  // Diagonal fixing: find lambda with values in (1/L)Z so that
  // (nu' - d lambda)(e, g, ..., g) = 0.
  const std::size_t q = cocycle.group().order();
  IntMatrix rows(q, dprev.cols());
  std::vector<int64_t> rhs(q);
  for (std::size_t g = 0; g < q; ++g) {
    const std::size_t r = finite.table_index(std::vector<std::size_t>(d, g));
    for (std::size_t c = 0; c < dprev.cols(); ++c) rows.at(g, c) = dprev.at(r, c);
    rhs[g] = finite.numerators()[r];
  }
  auto lambda = zmod::solve_mod(rows, rhs, l);
  if (!lambda) throw std::logic_error("no coboundary fixes the diagonal entries");
  Cochain out = finite - coboundary(Cochain(cocycle.group(), d - 1, l, *lambda));
  if (!is_normalized(out)) throw std::logic_error("normalization post-check failed");
  return out.reduced();
}

bool is_normalized(const Cochain& cocycle) {
  if (!is_cocycle(cocycle)) return false;
  const int64_t l = class_order(cocycle);
  if (!cocycle.scaled(l).is_zero()) return false;
  if (cocycle.degree() < 2) return true;
  for (std::size_t g = 0; g < cocycle.group().order(); ++g)
    if (cocycle.numerators()[cocycle.table_index(std::vector<std::size_t>(cocycle.degree(), g))] != 0) return false;
  return true;
}

Cochain cluster_cocycle() {
  FiniteAbelianGroup g({2, 2});
  Cochain c(g, 2, 2);
  std::vector<int64_t> num(16);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      auto ea = g.element(a), eb = g.element(b);
      num[a * 4 + b] = (ea[1] * (eb[0] - ea[0] + 2)) % 2;
    }
  }
  return Cochain(g, 2, 2, num);
}

CocycleCircuit compile_cocycle_circuit(const Cochain& cocycle, std::size_t n) {
  const std::size_t d = cocycle.degree();
  if (d < 1 || d > 2) throw std::invalid_argument("only degree 1 and 2 cocycles compile on a ring");
  if (n < 3 && d == 2) throw std::invalid_argument("ring needs at least 3 sites");
  const std::size_t q = cocycle.group().order();
  CocycleCircuit c{q, n, {}};
  const double den = static_cast<double>(cocycle.denominator());
  auto phase = [&](std::size_t idx) {
    return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(cocycle.numerators()[idx]) / den);
  };
  for (std::size_t i = 0; i < n; ++i) {
    DiagonalGate gate;
    gate.sign = 1;
    if (d == 1) {
      gate.sites = {i};
      for (std::size_t g = 0; g < q; ++g) gate.diagonal.push_back(phase(cocycle.table_index({g})));
    } else {
      gate.sites = {i, (i + 1) % n};
      gate.diagonal.resize(q * q);
      for (std::size_t g0 = 0; g0 < q; ++g0)
        for (std::size_t g1 = 0; g1 < q; ++g1) gate.diagonal[g0 + q * g1] = phase(cocycle.table_index({g0, g1}));
    }
    c.gates.push_back(std::move(gate));
  }
  return c;
}

}  // namespace catlab
