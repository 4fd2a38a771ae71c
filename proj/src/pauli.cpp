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

#include "catlab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace catlab {

SiteSet::SiteSet(std::initializer_list<std::size_t> sites) : SiteSet(std::vector<std::size_t>(sites)) {}

SiteSet::SiteSet(std::vector<std::size_t> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

bool SiteSet::contains(std::size_t site) const { return std::binary_search(sites_.begin(), sites_.end(), site); }

bool SiteSet::intersects(const SiteSet& other) const {
  auto a = sites_.begin(), b = other.sites_.begin();
  while (a != sites_.end() && b != other.sites_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

SiteSet SiteSet::united(const SiteSet& other) const {
  std::vector<std::size_t> all = sites_;
  all.insert(all.end(), other.sites_.begin(), other.sites_.end());
  return SiteSet(std::move(all));
}

PauliOperator::PauliOperator(std::size_t n) : n_(n), x_(n), z_(n) {}

PauliOperator PauliOperator::single(std::size_t n, std::size_t site, char kind) {
  if (site >= n) throw std::out_of_range("PauliOperator::single: site out of range");
  PauliOperator p(n);
  p.set_kind(site, kind);
  return p;
}

PauliOperator PauliOperator::on_sites(std::size_t n, const std::vector<std::size_t>& sites, char kind) {
  PauliOperator p(n);
  for (std::size_t s : sites) {
    if (s >= n) throw std::out_of_range("PauliOperator::on_sites: site out of range");
    p.set_kind(s, kind);
  }
  return p;
}

PauliOperator PauliOperator::parse(const std::string& text) {
  std::size_t pos = 0;
  int phase = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  PauliOperator p(text.size() - pos);
  for (std::size_t j = 0; pos + j < text.size(); ++j) {
    char c = text[pos + j];
    if (c == '_') c = 'I';
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument("PauliOperator::parse: bad character in '" + text + "'");
    }
    p.set_kind(j, c);
  }
  p.set_phase(phase);
  return p;
}

char PauliOperator::kind_at(std::size_t site) const {
  bool xb = x_.get(site), zb = z_.get(site);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

void PauliOperator::set_kind(std::size_t site, char kind) {
  switch (kind) {
    case 'I': x_.set(site, false); z_.set(site, false); break;
    case 'X': x_.set(site, true); z_.set(site, false); break;
    case 'Y': x_.set(site, true); z_.set(site, true); break;
    case 'Z': x_.set(site, false); z_.set(site, true); break;
    default: throw std::invalid_argument(std::string("PauliOperator: bad kind ") + kind);
  }
}

std::size_t PauliOperator::weight() const {
  gf2::BitVector either = x_;
  auto w = either.words();
  auto zw = z_.words();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= zw[i];
  return either.popcount();
}

PauliOperator PauliOperator::dagger() const {
  PauliOperator out = *this;
  out.set_phase(-static_cast<int>(phase_));
  return out;
}

PauliOperator PauliOperator::restricted(const SiteSet& sites) const {
  PauliOperator out(sites.size());
  std::size_t j = 0;
  for (std::size_t s : sites) {
    if (s >= n_) throw std::out_of_range("PauliOperator::restricted: site out of range");
    out.set_kind(j++, kind_at(s));
  }
  out.phase_ = phase_;
  return out;
}

PauliOperator PauliOperator::embedded(const PauliOperator& local, const SiteSet& sites, std::size_t n) {
  if (local.num_qubits() != sites.size()) throw std::invalid_argument("PauliOperator::embedded: size mismatch");
  PauliOperator out(n);
  std::size_t j = 0;
  for (std::size_t s : sites) {
    if (s >= n) throw std::out_of_range("PauliOperator::embedded: site out of range");
    out.set_kind(s, local.kind_at(j++));
  }
  out.phase_ = local.phase_;
  return out;
}

gf2::BitVector PauliOperator::symplectic() const {
  gf2::BitVector v(2 * n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (x_.get(j)) v.set(j, true);
    if (z_.get(j)) v.set(n_ + j, true);
  }
  return v;
}

std::string PauliOperator::to_string() const {
  static const char* prefixes[4] = {"+", "+i", "-", "-i"};
  std::string out = prefixes[phase_];
  for (std::size_t j = 0; j < n_; ++j) out.push_back(kind_at(j));
  return out;
}

PauliOperator multiply(const PauliOperator& p, const PauliOperator& q) {
  if (p.num_qubits() != q.num_qubits()) throw std::invalid_argument("multiply: qubit count mismatch");
  // Per site, sigma_a sigma_b = i^g sigma_c with g in {-1, 0, +1}; count both signs word-wise.
  auto px = p.x().words(), pz = p.z().words(), qx = q.x().words(), qz = q.z().words();
  int64_t plus = 0, minus = 0;
  for (std::size_t w = 0; w < px.size(); ++w) {
    uint64_t x1 = px[w], z1 = pz[w], x2 = qx[w], z2 = qz[w];
    uint64_t p_plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
    uint64_t p_minus = (x1 & ~z1 & ~x2 & z2) | (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2);
    plus += std::popcount(p_plus);
    minus += std::popcount(p_minus);
  }
  PauliOperator out = p;
  out.x() ^= q.x();
  out.z() ^= q.z();
  out.set_phase(static_cast<int>((p.phase() + q.phase() + plus - minus) % 4));
  return out;
}

PauliOperator operator*(const PauliOperator& p, const PauliOperator& q) { return multiply(p, q); }

bool commutes(const PauliOperator& p, const PauliOperator& q) {
  if (p.num_qubits() != q.num_qubits()) throw std::invalid_argument("commutes: qubit count mismatch");
  return p.x().dot(q.z()) == p.z().dot(q.x());
}

SiteSet support(const PauliOperator& p) {
  std::vector<std::size_t> sites;
  for (std::size_t j = 0; j < p.num_qubits(); ++j) {
    if (p.x().get(j) || p.z().get(j)) sites.push_back(j);
  }
  return SiteSet(std::move(sites));
}

}  // namespace catlab
