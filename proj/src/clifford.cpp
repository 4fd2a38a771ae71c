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

#include "catlab/clifford.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace catlab {

namespace {

std::size_t arity(GateKind kind) {
  switch (kind) {
    case GateKind::CZ:
    case GateKind::CNOT:
    case GateKind::SWAP:
      return 2;
    case GateKind::Tableau:
      return 0;
    default:
      return 1;
  }
}

void flip_sign(PauliOperator& p, bool flip) {
  if (flip) p.add_phase(2);
}

void check_targets(const std::vector<std::size_t>& targets) {
  std::vector<std::size_t> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("gate targets must be distinct");
}

}  // namespace

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CZ: return "CZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
    case GateKind::Tableau: return "TABLEAU";
  }
  return "?";
}

bool is_valid_tableau(const std::vector<PauliOperator>& x_images, const std::vector<PauliOperator>& z_images) {
  const std::size_t m = x_images.size();
  if (z_images.size() != m) return false;
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto* img : {&x_images[i], &z_images[i]}) {
      if (img->num_qubits() != m || !img->is_hermitian() || img->is_identity_up_to_phase()) return false;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!commutes(x_images[i], x_images[j])) return false;
      if (!commutes(z_images[i], z_images[j])) return false;
      if (commutes(x_images[i], z_images[j]) != (i != j)) return false;
    }
  }
  return true;
}

CliffordGate CliffordGate::named(GateKind kind, std::vector<std::size_t> targets) {
  if (kind == GateKind::Tableau) throw std::invalid_argument("use CliffordGate::tableau");
  if (targets.size() != arity(kind)) throw std::invalid_argument("wrong number of targets for " + gate_name(kind));
  check_targets(targets);
  CliffordGate g;
  g.kind_ = kind;
  g.targets_ = std::move(targets);
  return g;
}

CliffordGate CliffordGate::tableau(std::vector<std::size_t> targets, std::vector<PauliOperator> x_images,
                                   std::vector<PauliOperator> z_images) {
  if (targets.empty() || x_images.size() != targets.size()) throw std::invalid_argument("tableau size mismatch");
  check_targets(targets);
  if (!is_valid_tableau(x_images, z_images)) throw std::invalid_argument("tableau is not a Clifford map");
  CliffordGate g;
  g.kind_ = GateKind::Tableau;
  g.targets_ = std::move(targets);
  g.x_images_ = std::move(x_images);
  g.z_images_ = std::move(z_images);
  return g;
}

PauliOperator CliffordGate::conjugate(const PauliOperator& p) const {
  for (std::size_t t : targets_) {
    if (t >= p.num_qubits()) throw std::out_of_range("gate target outside register");
  }
  PauliOperator r = p;
  auto& x = r.x();
  auto& z = r.z();
  switch (kind_) {
    case GateKind::H: {
      std::size_t a = targets_[0];
      bool xa = x.get(a), za = z.get(a);
      flip_sign(r, xa && za);
      x.set(a, za);
      z.set(a, xa);
      break;
    }
    case GateKind::S:
    case GateKind::Sdg: {
      // S: X->Y, Y->-X. Sdg: X->-Y, Y->X.
      std::size_t a = targets_[0];
      bool xa = x.get(a), za = z.get(a);
      flip_sign(r, kind_ == GateKind::S ? (xa && za) : (xa && !za));
      z.set(a, za ^ xa);
      break;
    }
    case GateKind::X:
      flip_sign(r, z.get(targets_[0]));
      break;
    case GateKind::Z:
      flip_sign(r, x.get(targets_[0]));
      break;
    case GateKind::Y:
      flip_sign(r, x.get(targets_[0]) != z.get(targets_[0]));
      break;
    case GateKind::CNOT: {
      std::size_t c = targets_[0], t = targets_[1];
      bool xc = x.get(c), zc = z.get(c), xt = x.get(t), zt = z.get(t);
      flip_sign(r, xc && zt && (xt == zc));
      x.set(t, xt ^ xc);
      z.set(c, zc ^ zt);
      break;
    }
    case GateKind::CZ: {
      std::size_t a = targets_[0], b = targets_[1];
      bool xa = x.get(a), za = z.get(a), xb = x.get(b), zb = z.get(b);
      flip_sign(r, xa && xb && (za != zb));
      z.set(a, za ^ xb);
      z.set(b, zb ^ xa);
      break;
    }
    case GateKind::SWAP: {
      std::size_t a = targets_[0], b = targets_[1];
      bool xa = x.get(a), za = z.get(a);
      x.set(a, x.get(b));
      z.set(a, z.get(b));
      x.set(b, xa);
      z.set(b, za);
      break;
    }
    case GateKind::Tableau: {
      const std::size_t m = targets_.size();
      PauliOperator local(m);
      int k = p.phase();
      for (std::size_t j = 0; j < m; ++j) {
        bool xj = x.get(targets_[j]), zj = z.get(targets_[j]);
        if (xj && zj) ++k;
        x.set(targets_[j], false);
        z.set(targets_[j], false);
        if (xj) local = local * x_images_[j];
        if (zj) local = local * z_images_[j];
      }
      for (std::size_t j = 0; j < m; ++j) {
        x.set(targets_[j], local.x().get(j));
        z.set(targets_[j], local.z().get(j));
      }
      r.set_phase(k + local.phase());
      break;
    }
  }
  return r;
}

CliffordGate CliffordGate::as_tableau() const {
  if (kind_ == GateKind::Tableau) return *this;
  const std::size_t m = targets_.size();
  std::vector<std::size_t> local_targets(m);
  std::iota(local_targets.begin(), local_targets.end(), 0);
  CliffordGate local = named(kind_, local_targets);
  std::vector<PauliOperator> xs, zs;
  for (std::size_t j = 0; j < m; ++j) {
    xs.push_back(local.conjugate(PauliOperator::single(m, j, 'X')));
    zs.push_back(local.conjugate(PauliOperator::single(m, j, 'Z')));
  }
  return tableau(targets_, std::move(xs), std::move(zs));
}

CliffordGate CliffordGate::inverse() const {
  switch (kind_) {
    case GateKind::S: return named(GateKind::Sdg, targets_);
    case GateKind::Sdg: return named(GateKind::S, targets_);
    case GateKind::Tableau: break;
    default: return *this;
  }
  const std::size_t m = targets_.size();
  gf2::BitMatrix map(2 * m, 2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    gf2::BitVector cx = x_images_[j].symplectic(), cz = z_images_[j].symplectic();
    for (std::size_t r = 0; r < 2 * m; ++r) {
      map.set(r, j, cx.get(r));
      map.set(r, m + j, cz.get(r));
    }
  }
  std::vector<std::size_t> local_targets(m);
  std::iota(local_targets.begin(), local_targets.end(), 0);
  CliffordGate local = tableau(local_targets, x_images_, z_images_);
  auto preimage = [&](const PauliOperator& target) {
    auto q = gf2::solve(map, target.symplectic());
    if (!q) throw std::logic_error("tableau map is singular");
    PauliOperator pre(m);
    for (std::size_t j = 0; j < m; ++j) {
      pre.x().set(j, q->get(j));
      pre.z().set(j, q->get(m + j));
    }
    PauliOperator img = local.conjugate(pre);
    if (img.phase() != target.phase()) pre.add_phase(2);
    return pre;
  };
  std::vector<PauliOperator> xs, zs;
  for (std::size_t j = 0; j < m; ++j) {
    xs.push_back(preimage(PauliOperator::single(m, j, 'X')));
    zs.push_back(preimage(PauliOperator::single(m, j, 'Z')));
  }
  return tableau(targets_, std::move(xs), std::move(zs));
}

CliffordGate CliffordGate::relabelled(const std::vector<std::size_t>& map) const {
  CliffordGate g = *this;
  for (auto& t : g.targets_) t = map.at(t);
  check_targets(g.targets_);
  return g;
}

std::string CliffordGate::describe() const {
  std::ostringstream os;
  os << gate_name(kind_) << "(";
  for (std::size_t i = 0; i < targets_.size(); ++i) os << (i ? "," : "") << targets_[i];
  os << ")";
  return os.str();
}

std::size_t CliffordCircuit::gate_count() const {
  std::size_t c = 0;
  for (const auto& l : layers_) c += l.size();
  return c;
}

std::size_t CliffordCircuit::max_support() const {
  std::size_t m = 0;
  for (const auto& l : layers_)
    for (const auto& g : l) m = std::max(m, g.targets().size());
  return m;
}

void CliffordCircuit::add_layer(GateLayer layer) {
  std::vector<bool> used(n_, false);
  for (const auto& g : layer) {
    for (std::size_t t : g.targets()) {
      if (t >= n_) throw std::out_of_range("gate " + g.describe() + " outside register");
      if (used[t]) throw std::invalid_argument("overlapping gates in one layer at site " + std::to_string(t));
      used[t] = true;
    }
  }
  layers_.push_back(std::move(layer));
}

void CliffordCircuit::append_packed(const CliffordGate& gate) {
  for (std::size_t t : gate.targets())
    if (t >= n_) throw std::out_of_range("gate " + gate.describe() + " outside register");
  std::size_t earliest = 0;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    bool touch = false;
    for (const auto& g : layers_[l]) {
      if (g.support().intersects(gate.support())) {
        touch = true;
        break;
      }
    }
    if (touch) {
      earliest = l + 1;
      break;
    }
  }
  if (earliest == layers_.size()) layers_.emplace_back();
  layers_[earliest].push_back(gate);
}

void CliffordCircuit::append(const CliffordCircuit& other) {
  if (other.n_ != n_) throw std::invalid_argument("circuit size mismatch");
  for (const auto& l : other.layers_) add_layer(l);
}

PauliOperator CliffordCircuit::conjugate(const PauliOperator& p) const {
  PauliOperator r = p;
  for (const auto& layer : layers_)
    for (const auto& g : layer) r = g.conjugate(r);
  return r;
}

CliffordCircuit CliffordCircuit::inverse() const {
  CliffordCircuit inv(n_);
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    GateLayer l;
    for (const auto& g : *it) l.push_back(g.inverse());
    inv.layers_.push_back(std::move(l));
  }
  return inv;
}

SitePermutation::SitePermutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t v : image_) {
    if (v >= image_.size() || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
}

SitePermutation SitePermutation::ring_shift(std::size_t n, long shift) {
  std::vector<std::size_t> img(n);
  const long ln = static_cast<long>(n);
  for (std::size_t j = 0; j < n; ++j) img[j] = static_cast<std::size_t>(((static_cast<long>(j) + shift) % ln + ln) % ln);
  return SitePermutation(std::move(img));
}

PauliOperator SitePermutation::conjugate(const PauliOperator& p) const {
  if (p.num_qubits() != image_.size()) throw std::invalid_argument("permutation size mismatch");
  PauliOperator r(p.num_qubits());
  for (std::size_t j = 0; j < image_.size(); ++j) {
    r.x().set(image_[j], p.x().get(j));
    r.z().set(image_[j], p.z().get(j));
  }
  r.set_phase(p.phase());
  return r;
}

SitePermutation SitePermutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t j = 0; j < image_.size(); ++j) inv[image_[j]] = j;
  return SitePermutation(std::move(inv));
}

std::size_t CliffordQca::num_qubits() const {
  return std::visit([](const auto& u) { return u.num_qubits(); }, impl_);
}

PauliOperator CliffordQca::conjugate(const PauliOperator& p) const {
  return std::visit([&](const auto& u) { return u.conjugate(p); }, impl_);
}

PauliOperator CliffordQca::conjugate_inverse(const PauliOperator& p) const { return inverse().conjugate(p); }

CliffordQca CliffordQca::inverse() const {
  return std::visit([](const auto& u) { return CliffordQca(u.inverse()); }, impl_);
}

}  // namespace catlab
