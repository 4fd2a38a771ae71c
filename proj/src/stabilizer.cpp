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

#include "catlab/stabilizer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace catlab {

namespace {

bool sym_bit(const PauliOperator& p, std::size_t c) {
  const std::size_t n = p.num_qubits();
  return c < n ? p.x().get(c) : p.z().get(c - n);
}

std::optional<std::size_t> first_bit(const PauliOperator& p) {
  const std::size_t n = p.num_qubits();
  for (std::size_t c = 0; c < 2 * n; ++c)
    if (sym_bit(p, c)) return c;
  return std::nullopt;
}

// Incremental echelon basis of a commuting Hermitian Pauli group.
class GroupBuilder {
 public:
  enum class Status { Added, Dependent, Contradiction };

  Status add(PauliOperator p) {
    p = reduce(std::move(p));
    auto pivot = first_bit(p);
    if (!pivot) return p.phase() == 0 ? Status::Dependent : Status::Contradiction;
    rows_.push_back(std::move(p));
    pivots_.push_back(*pivot);
    return Status::Added;
  }

  // Multiplies p by basis rows until its pivot bits vanish.
  PauliOperator reduce(PauliOperator p) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (sym_bit(p, pivots_[i])) p = p * rows_[i];
    return p;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<PauliOperator> rows_;
  std::vector<std::size_t> pivots_;
};

void check_commuting(const StabilizerMixture& a, const StabilizerMixture& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("state size mismatch");
  for (const auto& g : a.generators())
    for (const auto& h : b.generators())
      if (!commutes(g, h)) throw UnsupportedCase("generators do not commute; use the dense engine");
}

}  // namespace

double DyadicValue::to_double() const { return zero ? 0.0 : std::pow(2.0, static_cast<double>(half_exponent) / 2.0); }

std::string DyadicValue::to_string() const {
  if (zero) return "0";
  std::ostringstream os;
  if (half_exponent % 2 == 0) {
    os << "2^" << half_exponent / 2;
  } else {
    os << "2^(" << half_exponent << "/2)";
  }
  return os.str();
}

StabilizerMixture::StabilizerMixture(std::size_t n, std::vector<PauliOperator> generators)
    : n_(n), gens_(std::move(generators)) {
  GroupBuilder builder;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    check_pauli(gens_[i]);
    if (gens_[i].is_identity_up_to_phase()) throw std::invalid_argument("identity generator");
    for (std::size_t j = 0; j < i; ++j)
      if (!commutes(gens_[i], gens_[j]))
        throw std::invalid_argument("generators " + gens_[j].to_string() + " and " + gens_[i].to_string() +
                                    " anticommute");
    auto status = builder.add(gens_[i]);
    if (status == GroupBuilder::Status::Dependent) throw std::invalid_argument("dependent generator " + gens_[i].to_string());
    if (status == GroupBuilder::Status::Contradiction) throw std::invalid_argument("generators produce -I");
  }
}

StabilizerMixture StabilizerMixture::zeros(std::size_t n) {
  std::vector<PauliOperator> g;
  for (std::size_t j = 0; j < n; ++j) g.push_back(PauliOperator::single(n, j, 'Z'));
  return StabilizerMixture(n, std::move(g));
}

StabilizerMixture StabilizerMixture::plus(std::size_t n) {
  std::vector<PauliOperator> g;
  for (std::size_t j = 0; j < n; ++j) g.push_back(PauliOperator::single(n, j, 'X'));
  return StabilizerMixture(n, std::move(g));
}

StabilizerMixture StabilizerMixture::from_strings(const std::vector<std::string>& generators) {
  if (generators.empty()) throw std::invalid_argument("from_strings needs at least one generator");
  std::vector<PauliOperator> g;
  for (const auto& s : generators) g.push_back(PauliOperator::parse(s));
  const std::size_t n = g.front().num_qubits();
  return StabilizerMixture(n, std::move(g));
}

void StabilizerMixture::check_pauli(const PauliOperator& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size does not match state");
  if (!p.is_hermitian()) throw std::invalid_argument("Pauli " + p.to_string() + " is not Hermitian");
}

StabilizerMixture StabilizerMixture::apply(const CliffordGate& g) const {
  StabilizerMixture r = *this;
  for (auto& p : r.gens_) p = g.conjugate(p);
  return r;
}

StabilizerMixture StabilizerMixture::apply(const CliffordCircuit& c) const {
  if (c.num_qubits() != n_) throw std::invalid_argument("circuit size does not match state");
  StabilizerMixture r = *this;
  for (auto& p : r.gens_) p = c.conjugate(p);
  return r;
}

StabilizerMixture StabilizerMixture::apply(const CliffordQca& u) const {
  if (u.num_qubits() != n_) throw std::invalid_argument("unitary size does not match state");
  StabilizerMixture r = *this;
  for (auto& p : r.gens_) p = u.conjugate(p);
  return r;
}

StabilizerMixture StabilizerMixture::conjugated_by(const PauliOperator& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("Pauli size does not match state");
  StabilizerMixture r = *this;
  for (auto& g : r.gens_)
    if (!commutes(g, p)) g.add_phase(2);
  return r;
}

std::optional<int> StabilizerMixture::group_sign(const PauliOperator& p) const {
  check_pauli(p);
  GroupBuilder builder;
  for (const auto& g : gens_) builder.add(g);
  PauliOperator r = builder.reduce(p);
  if (!r.is_identity_up_to_phase()) return std::nullopt;
  return r.phase() == 0 ? 1 : -1;
}

bool StabilizerMixture::contains(const PauliOperator& p) const {
  auto s = group_sign(p);
  return s && *s == 1;
}

int StabilizerMixture::expectation(const PauliOperator& p) const {
  auto s = group_sign(p);
  return s ? *s : 0;
}

StabilizerMixture::Measurement StabilizerMixture::measure(const PauliOperator& p, std::mt19937_64& rng) {
  check_pauli(p);
  std::optional<std::size_t> anti;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (!commutes(gens_[i], p)) {
      anti = i;
      break;
    }
  }
  if (!anti) {
    if (auto s = group_sign(p)) return {*s, true};
  }
  const int outcome = (rng() & 1u) ? -1 : 1;
  project(p, outcome);
  return {outcome, false};
}

bool StabilizerMixture::project(const PauliOperator& p, int outcome) {
  check_pauli(p);
  if (outcome != 1 && outcome != -1) throw std::invalid_argument("outcome must be +1 or -1");
  PauliOperator signed_p = p;
  if (outcome == -1) signed_p.add_phase(2);
  std::optional<std::size_t> anti;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (commutes(gens_[i], p)) continue;
    if (!anti) {
      anti = i;
    } else {
      gens_[i] = gens_[i] * gens_[*anti];
    }
  }
  if (anti) {
    gens_[*anti] = signed_p;
    return true;
  }
  if (auto s = group_sign(p)) return *s == outcome;
  gens_.push_back(signed_p);
  return true;
}

StabilizerMixture StabilizerMixture::with_generator(const PauliOperator& p) const {
  StabilizerMixture r = *this;
  for (const auto& g : gens_)
    if (!commutes(g, p)) throw std::invalid_argument("added generator must commute with the group");
  if (!r.project(p, 1)) throw std::invalid_argument("added generator contradicts the group");
  return r;
}

StabilizerMixture StabilizerMixture::canonical() const {
  std::vector<PauliOperator> rows = gens_;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < 2 * n_ && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && !sym_bit(rows[r], c)) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[rank], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && sym_bit(rows[i], c)) rows[i] = rows[i] * rows[rank];
    ++rank;
  }
  StabilizerMixture out(n_);
  out.gens_ = std::move(rows);
  return out;
}

bool StabilizerMixture::same_state(const StabilizerMixture& other) const {
  if (n_ != other.n_ || gens_.size() != other.gens_.size()) return false;
  return canonical().gens_ == other.canonical().gens_;
}

bool StabilizerMixture::is_invariant(const CliffordCircuit& c) const { return apply(c).same_state(*this); }

bool StabilizerMixture::is_invariant(const CliffordQca& u) const { return apply(u).same_state(*this); }

StabilizerMixture StabilizerMixture::tensor(const StabilizerMixture& other) const {
  const std::size_t n = n_ + other.n_;
  std::vector<std::size_t> first(n_), second(other.n_);
  for (std::size_t j = 0; j < n_; ++j) first[j] = j;
  for (std::size_t j = 0; j < other.n_; ++j) second[j] = n_ + j;
  std::vector<PauliOperator> g;
  for (const auto& p : gens_) g.push_back(PauliOperator::embedded(p, SiteSet(first), n));
  for (const auto& p : other.gens_) g.push_back(PauliOperator::embedded(p, SiteSet(second), n));
  return StabilizerMixture(n, std::move(g));
}

nlohmann::json StabilizerMixture::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : canonical().gens_) gens.push_back(g.to_string());
  return {{"n", n_}, {"generators", gens}};
}

StabilizerMixture StabilizerMixture::from_json(const nlohmann::json& j) {
  const std::size_t n = j.at("n").get<std::size_t>();
  std::vector<PauliOperator> g;
  for (const auto& s : j.at("generators")) {
    g.push_back(PauliOperator::parse(s.get<std::string>()));
    if (g.back().num_qubits() != n) throw std::invalid_argument("generator length does not match n");
  }
  return StabilizerMixture(n, std::move(g));
}

std::optional<std::size_t> joint_rank(const StabilizerMixture& a, const StabilizerMixture& b) {
  check_commuting(a, b);
  GroupBuilder builder;
  for (const auto* s : {&a, &b}) {
    for (const auto& g : s->generators()) {
      if (builder.add(g) == GroupBuilder::Status::Contradiction) return std::nullopt;
    }
  }
  return builder.size();
}

DyadicValue fidelity(const StabilizerMixture& rho, const StabilizerMixture& sigma) {
  auto j = joint_rank(rho, sigma);
  if (!j) return DyadicValue::zero_value();
  const int64_t k1 = static_cast<int64_t>(rho.rank()), k2 = static_cast<int64_t>(sigma.rank());
  return {false, k1 + k2 - 2 * static_cast<int64_t>(*j)};
}

DyadicValue pure_overlap(const StabilizerMixture& a, const StabilizerMixture& b) {
  const std::size_t n = a.num_qubits();
  if (b.num_qubits() != n) throw std::invalid_argument("qubit count mismatch");
  if (!a.is_pure() || !b.is_pure()) throw std::invalid_argument("pure_overlap needs pure states");
  // Common elements: kernel of [A | B] over the symplectic columns.
  const auto& ga = a.generators();
  const auto& gb = b.generators();
  gf2::BitMatrix m(2 * n, 2 * n);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    const auto v = (j < n ? ga[j] : gb[j - n]).symplectic();
    for (std::size_t r = 0; r < 2 * n; ++r) m.set(r, j, v.get(r));
  }
  const auto kernel = gf2::nullspace(m);
  for (const auto& c : kernel) {
    PauliOperator p(n), q(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (c.get(j)) p = p * ga[j];
      if (c.get(n + j)) q = q * gb[j];
    }
    if (p.phase() != q.phase()) return DyadicValue::zero_value();
  }
  return {false, -static_cast<int64_t>(n - kernel.size())};
}

DyadicValue renyi_ratio(const StabilizerMixture& rho, const StabilizerMixture& sigma, int order) {
  if (order < 1) throw std::invalid_argument("Renyi order must be >= 1");
  check_commuting(rho, sigma);
  if (order == 1) return DyadicValue::power_of_two(0);
  auto j = joint_rank(rho, sigma);
  if (!j) return DyadicValue::zero_value();
  const int64_t n = static_cast<int64_t>(rho.num_qubits());
  const int64_t k1 = static_cast<int64_t>(rho.rank()), k2 = static_cast<int64_t>(sigma.rank());
  const int64_t e = (n - static_cast<int64_t>(*j)) + (n - k1) * (order - 2) - (n - k2) * (order - 1);
  return DyadicValue::power_of_two(e);
}

DyadicValue renyi_correlator(const StabilizerMixture& rho, const PauliOperator& oi, const PauliOperator& oj,
                             int order) {
  return renyi_ratio(rho, rho.conjugated_by(oi.dagger() * oj), order);
}

}  // namespace catlab
