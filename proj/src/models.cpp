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


#include "catlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace catlab {

namespace {

std::size_t wrap(long i, std::size_t n) {
  const long ln = static_cast<long>(n);
  return static_cast<std::size_t>(((i % ln) + ln) % ln);
}

std::size_t ring_gap(std::size_t a, std::size_t b, std::size_t n) {
  const std::size_t d = a > b ? a - b : b - a;
  return std::min(d, n - d);
}

}  // namespace

// ---------------------------------------------------------------- lattice

LatticeSpec LatticeSpec::ring(std::size_t n) {
  if (n == 0) throw RegistryError("ring needs at least one site");
  LatticeSpec l;
  l.kind_ = LatticeKind::Ring;
  l.lx_ = n;
  l.ly_ = 1;
  return l;
}

LatticeSpec LatticeSpec::lieb_torus(std::size_t lx, std::size_t ly) {
  if (lx < 2 || ly < 2) throw RegistryError("Lieb torus needs lx, ly >= 2");
  LatticeSpec l;
  l.kind_ = LatticeKind::LiebTorus;
  l.lx_ = lx;
  l.ly_ = ly;
  return l;
}

LatticeSpec LatticeSpec::square_torus(std::size_t lx, std::size_t ly) {
  if (lx < 3 || ly < 3) throw RegistryError("square torus needs lx, ly >= 3");
  LatticeSpec l;
  l.kind_ = LatticeKind::SquareTorus;
  l.lx_ = lx;
  l.ly_ = ly;
  return l;
}

std::size_t LatticeSpec::num_sites() const {
  switch (kind_) {
    case LatticeKind::Ring: return lx_;
    case LatticeKind::LiebTorus: return 3 * lx_ * ly_;
    case LatticeKind::SquareTorus: return lx_ * ly_;
  }
  return 0;
}

std::size_t LatticeSpec::ring_site(long i) const { return wrap(i, num_sites()); }

std::size_t LatticeSpec::vertex(long x, long y) const {
  if (kind_ == LatticeKind::Ring) throw std::logic_error("ring has no 2D vertices");
  return wrap(x, lx_) + lx_ * wrap(y, ly_);
}

std::size_t LatticeSpec::horizontal_edge(long x, long y) const {
  if (kind_ != LatticeKind::LiebTorus) throw std::logic_error("edges exist only on the Lieb lattice");
  return lx_ * ly_ + vertex(x, y);
}

std::size_t LatticeSpec::vertical_edge(long x, long y) const {
  if (kind_ != LatticeKind::LiebTorus) throw std::logic_error("edges exist only on the Lieb lattice");
  return 2 * lx_ * ly_ + vertex(x, y);
}

LatticeSpec::Coordinates LatticeSpec::coordinates(std::size_t index) const {
  if (index >= num_sites()) throw std::out_of_range("site index out of range");
  if (kind_ == LatticeKind::Ring) return {SiteType::RingSite, index, 0};
  const std::size_t cells = lx_ * ly_;
  const std::size_t block = index / cells, cell = index % cells;
  const SiteType t = block == 0 ? SiteType::Vertex : block == 1 ? SiteType::HorizontalEdge : SiteType::VerticalEdge;
  return {t, cell % lx_, cell / lx_};
}

std::vector<std::size_t> LatticeSpec::vertices() const {
  if (kind_ == LatticeKind::Ring) throw std::logic_error("ring has no 2D vertices");
  std::vector<std::size_t> v(lx_ * ly_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

std::vector<std::size_t> LatticeSpec::edges() const {
  if (kind_ != LatticeKind::LiebTorus) throw std::logic_error("edges exist only on the Lieb lattice");
  std::vector<std::size_t> e(2 * lx_ * ly_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = lx_ * ly_ + i;
  return e;
}

std::array<std::size_t, 2> LatticeSpec::edge_endpoints(std::size_t edge) const {
  const auto c = coordinates(edge);
  const long x = static_cast<long>(c.x), y = static_cast<long>(c.y);
  if (c.type == SiteType::HorizontalEdge) return {vertex(x, y), vertex(x + 1, y)};
  if (c.type == SiteType::VerticalEdge) return {vertex(x, y), vertex(x, y + 1)};
  throw std::invalid_argument("not an edge");
}

std::vector<std::size_t> LatticeSpec::incident_edges(std::size_t v) const {
  const auto c = coordinates(v);
  if (c.type != SiteType::Vertex || kind_ != LatticeKind::LiebTorus) throw std::invalid_argument("not a Lieb vertex");
  const long x = static_cast<long>(c.x), y = static_cast<long>(c.y);
  return {horizontal_edge(x, y), horizontal_edge(x - 1, y), vertical_edge(x, y), vertical_edge(x, y - 1)};
}

std::vector<std::size_t> LatticeSpec::plaquette(long x, long y) const {
  return {horizontal_edge(x, y), vertical_edge(x + 1, y), horizontal_edge(x, y + 1), vertical_edge(x, y)};
}

std::vector<std::size_t> LatticeSpec::neighbours(std::size_t v) const {
  if (kind_ != LatticeKind::SquareTorus) throw std::logic_error("neighbours are defined on the square torus");
  const auto c = coordinates(v);
  const long x = static_cast<long>(c.x), y = static_cast<long>(c.y);
  return {vertex(x + 1, y), vertex(x - 1, y), vertex(x, y + 1), vertex(x, y - 1)};
}

std::size_t LatticeSpec::distance(std::size_t a, std::size_t b) const {
  if (kind_ == LatticeKind::Ring) return ring_gap(a, b, lx_);
  auto pos = [&](std::size_t i) {
    const auto c = coordinates(i);
    std::size_t px = c.x, py = c.y;
    if (kind_ == LatticeKind::LiebTorus) {
      px *= 2;
      py *= 2;
      if (c.type == SiteType::HorizontalEdge) px += 1;
      if (c.type == SiteType::VerticalEdge) py += 1;
    }
    return std::pair{px, py};
  };
  const std::size_t sx = kind_ == LatticeKind::LiebTorus ? 2 * lx_ : lx_;
  const std::size_t sy = kind_ == LatticeKind::LiebTorus ? 2 * ly_ : ly_;
  const auto [ax, ay] = pos(a);
  const auto [bx, by] = pos(b);
  return ring_gap(ax, bx, sx) + ring_gap(ay, by, sy);
}

std::string LatticeSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case LatticeKind::Ring: os << "ring(" << lx_ << ")"; break;
    case LatticeKind::LiebTorus: os << "lieb(" << lx_ << "x" << ly_ << ")"; break;
    case LatticeKind::SquareTorus: os << "square(" << lx_ << "x" << ly_ << ")"; break;
  }
  return os.str();
}

nlohmann::json LatticeSpec::to_json() const {
  static const char* names[] = {"ring", "lieb-torus", "square-torus"};
  nlohmann::json j{{"kind", names[static_cast<int>(kind_)]}, {"sites", num_sites()}};
  if (kind_ == LatticeKind::Ring) {
    j["n"] = lx_;
  } else {
    j["lx"] = lx_;
    j["ly"] = ly_;
  }
  return j;
}

// ---------------------------------------------------------------- symmetry

std::string form_name(FormDegree f) {
  switch (f) {
    case FormDegree::ZeroForm: return "0-form";
    case FormDegree::OneForm: return "1-form";
    case FormDegree::Subsystem: return "subsystem";
  }
  return "?";
}

std::string engine_name(Engine e) { return e == Engine::Stabilizer ? "stabilizer" : "dense"; }

SymmetryRep::SymmetryRep(FiniteAbelianGroup group, std::size_t site_dim, std::size_t num_sites,
                         std::vector<SymmetryGenerator> generators)
    : group_(std::move(group)), q_(site_dim), n_(num_sites), gens_(std::move(generators)) {
  if (gens_.size() != group_.factors().size()) throw std::invalid_argument("one generator per group factor expected");
  for (std::size_t j = 0; j < gens_.size(); ++j) {
    const auto& g = gens_[j];
    if (g.order != group_.factors()[j]) throw std::invalid_argument("generator order mismatch");
    if (g.pauli) {
      if (q_ != 2 || g.pauli->num_qubits() != n_ || !g.pauli->is_hermitian())
        throw std::invalid_argument("bad Pauli generator " + g.name);
      for (const auto& h : gens_)
        if (h.pauli && !commutes(*g.pauli, *h.pauli)) throw std::invalid_argument("generators must commute");
    } else {
      if (g.shift.size() != q_) throw std::invalid_argument("bad qudit generator " + g.name);
      std::vector<std::size_t> p(q_);
      for (std::size_t h = 0; h < q_; ++h) p[h] = h;
      for (int k = 0; k < g.order; ++k)
        for (auto& v : p) v = g.shift[v];
      for (std::size_t h = 0; h < q_; ++h)
        if (p[h] != h) throw std::invalid_argument("generator order mismatch for " + g.name);
    }
  }
}

PauliOperator SymmetryRep::pauli_element(std::size_t index) const {
  if (!is_pauli()) throw std::logic_error("not a Pauli symmetry");
  const auto coords = group_.element(index);
  PauliOperator p(n_);
  for (std::size_t j = 0; j < gens_.size(); ++j)
    if (coords[j] % 2) p = p * *gens_[j].pauli;
  return p;
}

PauliOperator SymmetryRep::truncated(std::size_t generator, const SiteSet& sites) const {
  if (!is_pauli()) throw std::logic_error("not a Pauli symmetry");
  const auto& g = *gens_.at(generator).pauli;
  PauliOperator r(n_);
  for (std::size_t s : sites) r.set_kind(s, g.kind_at(s));
  return r;
}

SymmetryRep SymmetryRep::doubled() const {
  std::vector<SymmetryGenerator> gens;
  for (const auto& g : gens_) {
    SymmetryGenerator d = g;
    if (g.pauli) {
      PauliOperator p(2 * n_);
      for (std::size_t s = 0; s < n_; ++s) {
        p.set_kind(s, g.pauli->kind_at(s));
        p.set_kind(n_ + s, g.pauli->kind_at(s));
      }
      d.pauli = p;
    }
    gens.push_back(std::move(d));
  }
  return SymmetryRep(group_, q_, 2 * n_, std::move(gens));
}

dense::DenseCircuit SymmetryRep::dense_generator(std::size_t j) const {
  const auto& g = gens_.at(j);
  dense::DenseCircuit c;
  for (std::size_t s = 0; s < n_; ++s) {
    dense::Matrix m;
    if (g.pauli) {
      const char k = g.pauli->kind_at(s);
      if (k == 'I') continue;
      m = dense::pauli_matrix(PauliOperator::single(1, 0, k));
    } else {
      const auto q = static_cast<Eigen::Index>(q_);
      m = dense::Matrix::Zero(q, q);
      for (std::size_t h = 0; h < q_; ++h) m(static_cast<Eigen::Index>(g.shift[h]), static_cast<Eigen::Index>(h)) = 1;
    }
    c.push_back({{s}, m});
  }
  return c;
}

// ---------------------------------------------------------------- entanglers

namespace {

dense::Matrix swap_matrix() {
  dense::Matrix m = dense::Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return m;
}

std::vector<dense::Complex> cocycle_diagonal(const DiagonalGate& g, bool inverse) {
  std::vector<dense::Complex> d = g.diagonal;
  if ((g.sign < 0) != inverse)
    for (auto& v : d) v = std::conj(v);
  return d;
}

dense::LocalOperator diagonal_operator(const std::vector<std::size_t>& sites, const std::vector<dense::Complex>& d) {
  dense::Matrix m = dense::Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return {sites, m};
}

/// SWAP sequence realising "content of site j moves to image[j]".
std::vector<std::pair<std::size_t, std::size_t>> transpositions(const std::vector<std::size_t>& image) {
  const std::size_t n = image.size();
  std::vector<std::size_t> pos(n), at(n);
  for (std::size_t j = 0; j < n; ++j) pos[j] = at[j] = j;
  std::vector<std::size_t> source(n);
  for (std::size_t j = 0; j < n; ++j) source[image[j]] = j;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t c = source[t];
    const std::size_t p = pos[c];
    if (p == t) continue;
    out.emplace_back(p, t);
    const std::size_t other = at[t];
    std::swap(at[p], at[t]);
    pos[c] = t;
    pos[other] = p;
  }
  return out;
}

}  // namespace

dense::DenseCircuit dense_circuit(const Entangler& u) {
  dense::DenseCircuit out;
  if (const auto* q = std::get_if<CliffordQca>(&u)) {
    if (const auto* c = q->circuit()) return dense::circuit_unitaries(*c);
    for (auto [a, b] : transpositions(q->permutation()->image())) out.push_back({{a, b}, swap_matrix()});
    return out;
  }
  for (const auto& g : std::get<CocycleCircuit>(u).gates) out.push_back(diagonal_operator(g.sites, cocycle_diagonal(g, false)));
  return out;
}

void apply_entangler(const Entangler& u, dense::DenseState& psi, bool inverse) {
  if (const auto* q = std::get_if<CliffordQca>(&u)) {
    if (const auto* p = q->permutation()) {
      psi.permute_sites(inverse ? p->inverse().image() : p->image());
    } else {
      psi.apply(dense::circuit_unitaries(inverse ? q->circuit()->inverse() : *q->circuit()));
    }
    return;
  }
  for (const auto& g : std::get<CocycleCircuit>(u).gates) psi.apply_diagonal(g.sites, cocycle_diagonal(g, inverse));
}

bool is_symmetric(const SymmetryRep& sym, const dense::DenseState& psi, double tol) {
  for (std::size_t j = 0; j < sym.generators().size(); ++j) {
    dense::DenseState s = psi;
    s.apply(sym.dense_generator(j));
    if (dense::overlap_modulus(s, psi) < 1 - tol) return false;
  }
  return true;
}

bool is_strongly_symmetric(const SymmetryRep& sym, const StabilizerMixture& rho) {
  for (const auto& g : sym.generators())
    if (!g.pauli || !rho.contains(*g.pauli)) return false;
  return true;
}

bool entangler_is_symmetric(const Entangler& u, const SymmetryRep& sym) {
  if (const auto* q = std::get_if<CliffordQca>(&u)) {
    if (!sym.is_pauli()) return false;
    for (const auto& g : sym.generators())
      if (q->conjugate(*g.pauli) != *g.pauli) return false;
    return true;
  }
  // Commutation checked on a fixed random state.
  const auto& c = std::get<CocycleCircuit>(u);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  const std::size_t dim = dense::checked_dimension(c.site_dim, c.num_sites);
  dense::Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = dense::Complex(nd(rng), nd(rng));
  const auto psi = dense::DenseState::from_amplitudes(c.site_dim, c.num_sites, v / v.norm());
  for (std::size_t j = 0; j < sym.generators().size(); ++j) {
    auto a = psi, b = psi;
    apply_entangler(u, a);
    a.apply(sym.dense_generator(j));
    b.apply(sym.dense_generator(j));
    apply_entangler(u, b);
    if ((a.amplitudes() - b.amplitudes()).norm() > 1e-10) return false;
  }
  return true;
}

bool Catalyst::is_mixed() const {
  return engine() == Engine::Stabilizer && !stabilizer().is_pure();
}

dense::DenseState ModelBundle::trivial_dense() const {
  if (const auto* s = std::get_if<StabilizerMixture>(&trivial)) return dense::state_of(*s);
  return std::get<dense::DenseState>(trivial);
}

dense::DenseState ModelBundle::target_dense() const {
  auto psi = trivial_dense();
  apply_entangler(entangler, psi);
  return psi;
}

bool ModelBundle::has_catalyst(const std::string& key) const {
  return std::any_of(catalysts.begin(), catalysts.end(), [&](const auto& r) { return r.key == key; });
}

// ---------------------------------------------------------------- bundles

namespace {

PauliOperator paulis(std::size_t n, std::initializer_list<std::pair<std::size_t, char>> ops) {
  PauliOperator p(n);
  for (auto [s, k] : ops) p = p * PauliOperator::single(n, s, k);
  return p;
}

std::vector<std::size_t> all_sites(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<std::size_t> stride_sites(std::size_t n, std::size_t start, std::size_t step) {
  std::vector<std::size_t> v;
  for (std::size_t i = start; i < n; i += step) v.push_back(i);
  return v;
}

SymmetryGenerator pauli_generator(std::string name, FormDegree form, PauliOperator p) {
  SymmetryGenerator g;
  g.name = std::move(name);
  g.form = form;
  g.order = 2;
  g.pauli = std::move(p);
  return g;
}

SymmetryRep pauli_symmetry(std::size_t n, std::vector<SymmetryGenerator> gens) {
  FiniteAbelianGroup group(std::vector<int64_t>(gens.size(), 2));
  return SymmetryRep(std::move(group), 2, n, std::move(gens));
}

/// Keeps the generators that are independent of the earlier ones.
StabilizerMixture independent_group(std::size_t n, const std::vector<PauliOperator>& gens) {
  StabilizerMixture r(n);
  for (const auto& g : gens)
    if (!r.group_sign(g)) r = r.with_generator(g);
  return r;
}

void finish_bundle(ModelBundle& b, const StabilizerMixture& expected_target) {
  if (!entangler_is_symmetric(b.entangler, b.symmetry))
    throw std::logic_error(b.name + ": entangler does not commute with the symmetry");
  const auto& triv = b.trivial_stabilizer();
  if (!is_strongly_symmetric(b.symmetry, triv)) throw std::logic_error(b.name + ": trivial state not symmetric");
  auto tgt = triv.apply(b.clifford_entangler());
  if (!tgt.same_state(expected_target)) throw std::logic_error(b.name + ": entangler does not reproduce the target");
  b.target = tgt;
}

ModelBundle lsm_dimer(const ModelParams& p) {
  const std::size_t n = p.n;
  if (n < 4 || n % 2) throw RegistryError("lsm-dimer needs an even number of qubits n >= 4");
  ModelBundle b;
  b.name = "lsm-dimer";
  b.lattice = LatticeSpec::ring(n);
  b.symmetry = pauli_symmetry(n, {pauli_generator("prod-X", FormDegree::ZeroForm, PauliOperator::on_sites(n, all_sites(n), 'X')),
                                  pauli_generator("prod-Z", FormDegree::ZeroForm, PauliOperator::on_sites(n, all_sites(n), 'Z'))});
  b.entangler = CliffordQca(SitePermutation::ring_shift(n, 1));
  std::vector<PauliOperator> triv, tgt;
  for (std::size_t i = 0; i < n; i += 2) {
    const std::size_t a = i, c = i + 1, d = (i + 2) % n;
    triv.push_back(paulis(n, {{a, 'X'}, {c, 'X'}}));
    triv.push_back(paulis(n, {{a, 'Z'}, {c, 'Z'}}));
    tgt.push_back(paulis(n, {{c, 'X'}, {d, 'X'}}));
    tgt.push_back(paulis(n, {{c, 'Z'}, {d, 'Z'}}));
  }
  b.trivial = StabilizerMixture(n, triv);
  b.catalysts = {{"ghz", Engine::Stabilizer, "GHZ state on the whole ring"},
                 {"superposition", Engine::Dense, "normalised sum of the two dimer coverings"},
                 {"gapless", Engine::Dense, "ground state of the self-dual XX+ZZ chain"},
                 {"long-range-bell", Engine::Stabilizer, "Bell pairs (i, i + n/2)"},
                 {"group-average", Engine::Stabilizer, "mixture proportional to the sum over U(g)"}};
  finish_bundle(b, StabilizerMixture(n, tgt));
  return b;
}

ModelBundle cluster_1d(const ModelParams& p) {
  const std::size_t n = p.n;
  if (n < 4 || n % 2) throw RegistryError("cluster-1d needs an even ring length n >= 4");
  ModelBundle b;
  b.name = "cluster-1d";
  b.lattice = LatticeSpec::ring(n);
  b.symmetry = pauli_symmetry(n, {pauli_generator("U_e", FormDegree::ZeroForm, PauliOperator::on_sites(n, stride_sites(n, 0, 2), 'X')),
                                  pauli_generator("U_o", FormDegree::ZeroForm, PauliOperator::on_sites(n, stride_sites(n, 1, 2), 'X'))});
  CliffordCircuit cz(n);
  for (std::size_t parity = 0; parity < 2; ++parity) {
    GateLayer layer;
    for (std::size_t i = parity; i < n; i += 2) layer.push_back(CliffordGate::named(GateKind::CZ, {i, (i + 1) % n}));
    cz.add_layer(std::move(layer));
  }
  b.entangler = CliffordQca(std::move(cz));
  b.trivial = StabilizerMixture::plus(n);
  std::vector<PauliOperator> tgt;
  for (std::size_t i = 0; i < n; ++i) tgt.push_back(paulis(n, {{(i + n - 1) % n, 'Z'}, {i, 'X'}, {(i + 1) % n, 'Z'}}));
  b.catalysts = {{"ghz", Engine::Stabilizer, "GHZ states on the even and odd sublattices"},
                 {"ghz-one-sublattice", Engine::Stabilizer, "GHZ on the even sublattice, |+> on the odd one"},
                 {"superposition", Engine::Dense, "normalised (|+...+> + |cluster>)"},
                 {"gapless", Engine::Dense, "ground state of H(1/2)"},
                 {"swssb", Engine::Stabilizer, "(1 + U_e)(1 + U_o) / 2^n"},
                 {"group-average", Engine::Stabilizer, "mixture proportional to the sum over U(g)"}};
  finish_bundle(b, StabilizerMixture(n, tgt));
  return b;
}

ModelBundle lieb_2d(const ModelParams& p) {
  const std::size_t lx = p.lx ? p.lx : p.n, ly = p.ly ? p.ly : lx;
  ModelBundle b;
  b.name = "lieb-2d";
  b.lattice = LatticeSpec::lieb_torus(lx, ly);
  const auto& L = b.lattice;
  const std::size_t n = L.num_sites();
  std::vector<SymmetryGenerator> gens{pauli_generator("U0", FormDegree::ZeroForm, PauliOperator::on_sites(n, L.vertices(), 'X'))};
  for (std::size_t y = 0; y < ly; ++y)
    for (std::size_t x = 0; x < lx; ++x)
      gens.push_back(pauli_generator("U1[" + std::to_string(x) + "," + std::to_string(y) + "]", FormDegree::OneForm,
                                     PauliOperator::on_sites(n, L.plaquette(long(x), long(y)), 'X')));
  b.symmetry = pauli_symmetry(n, std::move(gens));
  CliffordCircuit cz(n);
  for (std::size_t e : L.edges())
    for (std::size_t v : L.edge_endpoints(e)) cz.append_packed(CliffordGate::named(GateKind::CZ, {v, e}));
  b.entangler = CliffordQca(std::move(cz));
  b.trivial = StabilizerMixture::plus(n);
  std::vector<PauliOperator> tgt;
  for (std::size_t v : L.vertices()) {
    PauliOperator s = PauliOperator::single(n, v, 'X');
    for (std::size_t e : L.incident_edges(v)) s = s * PauliOperator::single(n, e, 'Z');
    tgt.push_back(s);
  }
  for (std::size_t e : L.edges()) {
    const auto [v1, v2] = L.edge_endpoints(e);
    tgt.push_back(paulis(n, {{e, 'X'}, {v1, 'Z'}, {v2, 'Z'}}));
  }
  b.catalysts = {{"ghz-vertices", Engine::Stabilizer, "|+> on edges, GHZ on vertices"},
                 {"toric-code", Engine::Stabilizer, "toric-code edge state, |+> on vertices"},
                 {"lieb-mixed", Engine::Stabilizer, "(1 + U0)/2 times the plaquette projectors"},
                 {"group-average", Engine::Stabilizer, "mixture proportional to the sum over U(g)"}};
  finish_bundle(b, StabilizerMixture(n, tgt));
  return b;
}

ModelBundle square_sspt(const ModelParams& p) {
  const std::size_t lx = p.lx ? p.lx : p.n, ly = p.ly ? p.ly : lx;
  if (lx != ly) throw RegistryError("square-sspt needs a square torus (lx == ly) for closed diagonal lines");
  ModelBundle b;
  b.name = "square-sspt";
  b.lattice = LatticeSpec::square_torus(lx, ly);
  const auto& L = b.lattice;
  const std::size_t n = L.num_sites();
  std::vector<SymmetryGenerator> gens;
  for (int dir : {+1, -1})
    for (std::size_t c = 0; c < lx; ++c) {
      std::vector<std::size_t> line;
      for (std::size_t i = 0; i < lx; ++i) line.push_back(L.site(long(i), long(c) + dir * long(i)));
      gens.push_back(pauli_generator(std::string(dir > 0 ? "U+[" : "U-[") + std::to_string(c) + "]", FormDegree::Subsystem,
                                     PauliOperator::on_sites(n, line, 'X')));
    }
  b.symmetry = pauli_symmetry(n, std::move(gens));
  CliffordCircuit cz(n);
  for (std::size_t y = 0; y < ly; ++y)
    for (std::size_t x = 0; x < lx; ++x) {
      const std::size_t v = L.site(long(x), long(y));
      cz.append_packed(CliffordGate::named(GateKind::CZ, {v, L.site(long(x) + 1, long(y))}));
      cz.append_packed(CliffordGate::named(GateKind::CZ, {v, L.site(long(x), long(y) + 1)}));
    }
  b.entangler = CliffordQca(std::move(cz));
  b.trivial = StabilizerMixture::plus(n);
  std::vector<PauliOperator> tgt;
  for (std::size_t v = 0; v < n; ++v) {
    PauliOperator s = PauliOperator::single(n, v, 'X');
    for (std::size_t w : L.neighbours(v)) s = s * PauliOperator::single(n, w, 'Z');
    tgt.push_back(s);
  }
  b.catalysts = {{"pim-symmetric", Engine::Stabilizer, "line-symmetric plaquette Ising ground state"},
                 {"group-average", Engine::Stabilizer, "mixture proportional to the sum over U(g)"}};
  finish_bundle(b, StabilizerMixture(n, tgt));
  return b;
}

ModelBundle cocycle_model(const ModelParams& p) {
  const std::size_t n = p.n;
  if (n < 3) throw RegistryError("cocycle bundles need a ring of n >= 3 sites");
  if (p.group.empty()) throw RegistryError("cocycle bundles need group factors");
  FiniteAbelianGroup G(p.group);
  const auto H = cohomology_group(G, 2, Coefficients::u1());
  std::vector<int64_t> cls = p.cohomology_class;
  if (cls.empty()) cls.assign(H.factors.size(), H.factors.empty() ? 0 : 1);
  if (cls.size() != H.factors.size())
    throw RegistryError("class has " + std::to_string(cls.size()) + " coordinates, H^2 has " + std::to_string(H.factors.size()));
  int64_t den = 1;
  for (const auto& r : H.representatives) den = std::lcm(den, r.denominator());
  Cochain nu(G, 2, den);
  for (std::size_t i = 0; i < cls.size(); ++i) nu = nu + H.representatives[i].rescaled(den).scaled(cls[i]);
  nu = normalize_cocycle(nu.reduced());

  ModelBundle b;
  b.name = "cocycle";
  b.lattice = LatticeSpec::ring(n);
  const std::size_t q = G.order();
  dense::checked_dimension(q, n);
  std::vector<SymmetryGenerator> gens;
  for (std::size_t j = 0; j < G.factors().size(); ++j) {
    std::vector<int64_t> e(G.factors().size(), 0);
    e[j] = 1;
    const std::size_t ej = G.index(e);
    SymmetryGenerator g;
    g.name = "u(e" + std::to_string(j) + ")";
    g.order = static_cast<int>(G.factors()[j]);
    for (std::size_t h = 0; h < q; ++h) g.shift.push_back(G.add(ej, h));
    gens.push_back(std::move(g));
  }
  b.symmetry = SymmetryRep(G, q, n, std::move(gens));
  b.entangler = compile_cocycle_circuit(nu, n);
  b.cocycle = nu;
  const auto plus = dense::Vector::Constant(static_cast<Eigen::Index>(q), 1.0 / std::sqrt(double(q)));
  b.trivial = dense::DenseState::product(q, n, plus);
  b.target = b.target_dense();
  if (!entangler_is_symmetric(b.entangler, b.symmetry)) throw std::logic_error("cocycle entangler not symmetric");
  b.catalysts = {{"ghz", Engine::Dense, "uniform sum of |g g ... g>"},
                 {"superposition", Engine::Dense, "normalised orbit sum of U^l |+_G ... +_G>"},
                 {"gapless", Engine::Dense, "symmetric ground state of the orbit-summed paramagnet"}};
  return b;
}

}  // namespace

std::vector<std::string> model_keys() { return {"lsm-dimer", "cluster-1d", "lieb-2d", "square-sspt", "cocycle"}; }

ModelBundle build_model(const std::string& name, const ModelParams& params) {
  if (name == "lsm-dimer") return lsm_dimer(params);
  if (name == "cluster-1d") return cluster_1d(params);
  if (name == "lieb-2d") return lieb_2d(params);
  if (name == "square-sspt") return square_sspt(params);
  if (name == "cocycle") return cocycle_model(params);
  throw RegistryError("unknown model '" + name + "'");
}

// ---------------------------------------------------------------- Hamiltonians

namespace {

std::pair<double, PauliOperator> canonical_term(double c, PauliOperator p) {
  if (!p.is_hermitian()) throw std::logic_error("non-Hermitian Pauli term");
  if (p.phase() == 2) c = -c;
  p.set_phase(0);
  return {c, std::move(p)};
}

std::map<std::string, double> term_map(const PauliSum& s) {
  std::map<std::string, double> m;
  for (const auto& [c, p] : s.terms) {
    auto [cc, pp] = canonical_term(c, p);
    m[pp.to_string()] += cc;
  }
  for (auto it = m.begin(); it != m.end();) it = std::abs(it->second) < 1e-12 ? m.erase(it) : std::next(it);
  return m;
}

PauliSum scaled_sum(const PauliSum& s, double k) {
  PauliSum r = s;
  for (auto& t : r.terms) t.first *= k;
  return r;
}

PauliSum add_sums(PauliSum a, const PauliSum& b) {
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  return a;
}

}  // namespace

PauliSum PauliSum::conjugated(const CliffordQca& u) const {
  PauliSum r{num_qubits, {}};
  for (const auto& [c, p] : terms) r.terms.push_back(canonical_term(c, u.conjugate(p)));
  return r;
}

bool PauliSum::same_terms(const PauliSum& other) const {
  const auto a = term_map(*this), b = term_map(other);
  if (a.size() != b.size()) return false;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || std::abs(it->second - v) > 1e-12) return false;
  }
  return true;
}

dense::Hamiltonian PauliSum::to_dense() const {
  dense::Hamiltonian h(2, num_qubits);
  for (const auto& [c, p] : terms) h.add_pauli(c, p);
  return h;
}

HamiltonianKind HamiltonianKind::parse(const std::string& text) {
  HamiltonianKind k;
  if (text == "triv") {
    k.type = Type::Triv;
  } else if (text == "spt") {
    k.type = Type::Spt;
  } else if (text == "catalyst-sum") {
    k.type = Type::CatalystSum;
  } else if (text.rfind("interpolated", 0) == 0) {
    k.type = Type::Interpolated;
    const auto open = text.find('('), close = text.find(')');
    if (open != std::string::npos) {
      if (close == std::string::npos || close < open) throw RegistryError("bad Hamiltonian kind '" + text + "'");
      const std::string arg = text.substr(open + 1, close - open - 1);
      const auto slash = arg.find('/');
      try {
        k.alpha = slash == std::string::npos ? std::stod(arg) : std::stod(arg.substr(0, slash)) / std::stod(arg.substr(slash + 1));
      } catch (const std::exception&) {
        throw RegistryError("bad interpolation parameter '" + arg + "'");
      }
    }
  } else {
    throw RegistryError("unknown Hamiltonian kind '" + text + "'");
  }
  return k;
}

PauliSum build_pauli_hamiltonian(const ModelBundle& bundle, const HamiltonianKind& kind) {
  if (!bundle.is_clifford()) throw RegistryError("Pauli Hamiltonians exist only for qubit bundles");
  const auto& u = bundle.clifford_entangler();
  PauliSum triv{bundle.num_sites(), {}};
  for (const auto& g : bundle.trivial_stabilizer().generators()) triv.terms.push_back(canonical_term(-1.0, g));
  using T = HamiltonianKind::Type;
  switch (kind.type) {
    case T::Triv: return triv;
    case T::Spt: return triv.conjugated(u);
    case T::Interpolated: {
      PauliSum h = add_sums(scaled_sum(triv, kind.alpha), scaled_sum(triv.conjugated(u), 1 - kind.alpha));
      if (std::abs(kind.alpha - 0.5) < 1e-15 && !h.conjugated(u).same_terms(h))
        throw std::logic_error("self-dual Hamiltonian does not commute with the entangler");
      return h;
    }
    case T::CatalystSum: {
      PauliSum h{triv.num_qubits, {}}, cur = triv;
      for (int l = 1; l <= 256; ++l) {
        cur = cur.conjugated(u);
        h = add_sums(h, cur);
        if (cur.same_terms(triv)) return h;
      }
      throw std::runtime_error("entangler orbit of the trivial Hamiltonian did not close");
    }
  }
  return triv;
}

namespace {

int cocycle_order(const CocycleCircuit& c) {
  for (int l = 1; l <= 4096; ++l) {
    bool one = true;
    for (const auto& g : c.gates)
      for (const auto& v : g.diagonal)
        if (std::abs(std::pow(v, l) - 1.0) > 1e-9) one = false;
    if (one) return l;
  }
  throw std::runtime_error("cocycle circuit has no finite order");
}

}  // namespace

dense::Hamiltonian build_hamiltonian(const ModelBundle& bundle, const HamiltonianKind& kind) {
  if (bundle.is_clifford()) {
    dense::checked_dimension(2, bundle.num_sites());
    return build_pauli_hamiltonian(bundle, kind).to_dense();
  }
  const auto& c = bundle.cocycle_entangler();
  const std::size_t q = c.site_dim, n = c.num_sites;
  const auto qi = static_cast<Eigen::Index>(q);
  const dense::Matrix proj = dense::Matrix::Constant(qi, qi, 1.0 / double(q));
  auto conjugated_term = [&](std::size_t i, int power) {
    const std::vector<std::size_t> sites{(i + n - 1) % n, i, (i + 1) % n};
    const auto& left = c.gates[(i + n - 1) % n].diagonal;
    const auto& right = c.gates[i].diagonal;
    const auto dim = qi * qi * qi;
    dense::Vector d(dim);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t m = 0; m < q; ++m)
        for (std::size_t r = 0; r < q; ++r)
          d(static_cast<Eigen::Index>(a + q * m + q * q * r)) = std::pow(left[a + q * m] * right[m + q * r], power);
    dense::Matrix full = dense::Matrix::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x)
      for (Eigen::Index y = 0; y < dim; ++y) {
        const auto ax = x % qi, mx = (x / qi) % qi, rx = x / (qi * qi);
        const auto ay = y % qi, my = (y / qi) % qi, ry = y / (qi * qi);
        if (ax != ay || rx != ry) continue;
        full(x, y) = -proj(mx, my) * d(x) * std::conj(d(y));
      }
    return dense::LocalOperator{sites, full};
  };
  auto layer = [&](int power, double weight) {
    dense::Hamiltonian h(q, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto t = conjugated_term(i, power);
      t.matrix *= weight;
      h.add_term(std::move(t));
    }
    return h;
  };
  using T = HamiltonianKind::Type;
  switch (kind.type) {
    case T::Triv: return layer(0, 1);
    case T::Spt: return layer(1, 1);
    case T::Interpolated: {
      auto h = layer(0, kind.alpha);
      h.append(layer(1, 1 - kind.alpha));
      return h;
    }
    case T::CatalystSum: {
      const int L = cocycle_order(c);
      dense::Hamiltonian h(q, n);
      for (int l = 1; l <= L; ++l) h.append(layer(l % L, 1));
      return h;
    }
  }
  return layer(0, 1);
}

// ---------------------------------------------------------------- catalysts

namespace {

StabilizerMixture stabilizer_catalyst(const ModelBundle& b, const std::string& kind) {
  const std::size_t n = b.num_sites();
  const auto& L = b.lattice;
  std::vector<PauliOperator> g;
  auto sym = [&](std::size_t j) { return *b.symmetry.generators()[j].pauli; };
  if (kind == "group-average") {
    for (std::size_t j = 0; j < b.symmetry.generators().size(); ++j) g.push_back(sym(j));
    return independent_group(n, g);
  }
  if (b.name == "lsm-dimer") {
    if (kind == "ghz") {
      for (std::size_t i = 0; i + 1 < n; ++i) g.push_back(paulis(n, {{i, 'Z'}, {i + 1, 'Z'}}));
      g.push_back(sym(0));
    } else if (kind == "long-range-bell") {
      for (std::size_t i = 0; i < n / 2; ++i) {
        g.push_back(paulis(n, {{i, 'X'}, {i + n / 2, 'X'}}));
        g.push_back(paulis(n, {{i, 'Z'}, {i + n / 2, 'Z'}}));
      }
    }
  } else if (b.name == "cluster-1d") {
    if (kind == "ghz") {
      for (std::size_t i = 0; i + 2 < n; ++i) g.push_back(paulis(n, {{i, 'Z'}, {i + 2, 'Z'}}));
      g.push_back(sym(0));
      g.push_back(sym(1));
    } else if (kind == "ghz-one-sublattice") {
      for (std::size_t i = 0; i + 2 < n; i += 2) g.push_back(paulis(n, {{i, 'Z'}, {i + 2, 'Z'}}));
      g.push_back(sym(0));
      for (std::size_t i = 1; i < n; i += 2) g.push_back(PauliOperator::single(n, i, 'X'));
    } else if (kind == "swssb") {
      g = {sym(0), sym(1)};
    }
  } else if (b.name == "lieb-2d") {
    const auto verts = L.vertices();
    if (kind == "ghz-vertices") {
      for (std::size_t e : L.edges()) g.push_back(PauliOperator::single(n, e, 'X'));
      for (std::size_t k = 0; k + 1 < verts.size(); ++k) g.push_back(paulis(n, {{verts[k], 'Z'}, {verts[k + 1], 'Z'}}));
      g.push_back(sym(0));
    } else if (kind == "toric-code") {
      std::vector<PauliOperator> start;
      for (std::size_t e : L.edges()) start.push_back(PauliOperator::single(n, e, 'Z'));
      for (std::size_t v : verts) start.push_back(PauliOperator::single(n, v, 'X'));
      StabilizerMixture s(n, start);
      for (std::size_t j = 1; j < b.symmetry.generators().size(); ++j)
        if (!s.project(sym(j), 1)) throw std::logic_error("plaquette projection failed");
      return s;
    } else if (kind == "lieb-mixed") {
      for (std::size_t j = 0; j < b.symmetry.generators().size(); ++j) g.push_back(sym(j));
      return independent_group(n, g);
    }
  } else if (b.name == "square-sspt") {
    if (kind == "pim-symmetric") {
      for (std::size_t v = 0; v < n; ++v) g.push_back(PauliOperator::on_sites(n, L.neighbours(v), 'Z'));
      for (std::size_t j = 0; j < b.symmetry.generators().size(); ++j) g.push_back(sym(j));
      return independent_group(n, g);
    }
  }
  if (g.empty()) throw RegistryError("catalyst '" + kind + "' has no stabilizer recipe for " + b.name);
  return StabilizerMixture(n, g);
}

dense::DenseState orbit_superposition(const ModelBundle& b) {
  const auto start = b.trivial_dense();
  dense::Vector sum = start.amplitudes();
  auto cur = start;
  for (int l = 1; l <= 4096; ++l) {
    apply_entangler(b.entangler, cur);
    const auto ov = start.overlap(cur);
    if (std::abs(ov - 1.0) < 1e-9)
      return dense::DenseState::from_amplitudes(start.site_dim(), start.num_sites(), sum / sum.norm());
    if (std::abs(std::abs(ov) - 1.0) < 1e-9) throw std::logic_error("entangler orbit closes with a nontrivial phase");
    sum += cur.amplitudes();
  }
  throw std::runtime_error("entangler orbit did not close");
}

dense::DenseState gapless_state(const ModelBundle& b, nlohmann::json& info) {
  const auto h = build_hamiltonian(b, {HamiltonianKind::Type::CatalystSum, 0.5});
  const auto gs = dense::ground_state(h);
  info = {{"ground_energy", gs.energy}, {"ground_degeneracy", gs.basis.size()}, {"spectral_gap", gs.gap}};
  if (gs.basis.size() == 1)
    return dense::DenseState::from_amplitudes(b.site_dim(), b.num_sites(), gs.basis.front());
  std::vector<dense::DenseCircuit> syms;
  for (std::size_t j = 0; j < b.symmetry.generators().size(); ++j) syms.push_back(b.symmetry.dense_generator(j));
  syms.push_back(dense_circuit(b.entangler));
  return dense::symmetrize_in_ground_space(b.site_dim(), b.num_sites(), gs.basis, syms);
}

dense::DenseState dense_catalyst(const ModelBundle& b, const std::string& kind, nlohmann::json& info) {
  if (b.lattice.kind() != LatticeKind::Ring) throw RegistryError("dense catalysts are available for 1D bundles only");
  if (kind == "superposition") return orbit_superposition(b);
  if (kind == "gapless") return gapless_state(b, info);
  if (kind == "ghz" && !b.is_clifford()) {
    const std::size_t q = b.site_dim(), n = b.num_sites();
    dense::Vector v = dense::Vector::Zero(static_cast<Eigen::Index>(dense::checked_dimension(q, n)));
    for (std::size_t g = 0; g < q; ++g) {
      std::size_t idx = 0;
      for (std::size_t j = 0, s = 1; j < n; ++j, s *= q) idx += g * s;
      v(static_cast<Eigen::Index>(idx)) = 1.0 / std::sqrt(double(q));
    }
    return dense::DenseState::from_amplitudes(q, n, v);
  }
  throw RegistryError("catalyst '" + kind + "' has no dense recipe for " + b.name);
}

}  // namespace

Catalyst build_catalyst(const ModelBundle& bundle, const std::string& kind, uint64_t /*seed*/) {
  auto it = std::find_if(bundle.catalysts.begin(), bundle.catalysts.end(), [&](const auto& r) { return r.key == kind; });
  if (it == bundle.catalysts.end()) throw RegistryError("catalyst '" + kind + "' does not apply to " + bundle.name);
  Catalyst c;
  c.name = kind;
  if (it->engine == Engine::Stabilizer) {
    auto s = stabilizer_catalyst(bundle, kind);
    if (!is_strongly_symmetric(bundle.symmetry, s)) throw std::logic_error(kind + ": catalyst not strongly symmetric");
    if (!s.is_invariant(bundle.clifford_entangler())) throw std::logic_error(kind + ": catalyst not entangler invariant");
    c.state = std::move(s);
  } else {
    auto s = dense_catalyst(bundle, kind, c.info);
    if (!is_symmetric(bundle.symmetry, s)) throw std::logic_error(kind + ": catalyst not symmetric");
    auto u = s;
    apply_entangler(bundle.entangler, u);
    if (dense::overlap_modulus(u, s) < 1 - 1e-10) throw std::logic_error(kind + ": catalyst not entangler invariant");
    c.state = std::move(s);
  }
  return c;
}

}  // namespace catlab
