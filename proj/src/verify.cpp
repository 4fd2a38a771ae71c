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

#include "catlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace catlab {

namespace {

/// Applies U (or U^-1) to the low n qubits of a 2n-qubit Pauli.
PauliOperator conjugate_low(const CliffordQca& u, const PauliOperator& p, bool inverse) {
  const std::size_t n = u.num_qubits();
  std::vector<std::size_t> low(n), high(n);
  for (std::size_t i = 0; i < n; ++i) {
    low[i] = i;
    high[i] = n + i;
  }
  const SiteSet ls(low), hs(high);
  PauliOperator a = p.restricted(ls);
  PauliOperator b = p.restricted(hs);
  b.set_phase(0);
  a = inverse ? u.conjugate_inverse(a) : u.conjugate(a);
  return PauliOperator::embedded(a, ls, 2 * n) * PauliOperator::embedded(b, hs, 2 * n);
}

PauliOperator swap_registers(const PauliOperator& p, std::size_t n, std::size_t i) {
  PauliOperator r = p;
  const char a = p.kind_at(i), b = p.kind_at(n + i);
  r.set_kind(i, b);
  r.set_kind(n + i, a);
  return r;
}

dense::Matrix swap_matrix(std::size_t q) {
  const auto d = static_cast<Eigen::Index>(q * q);
  dense::Matrix m = dense::Matrix::Zero(d, d);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      m(static_cast<Eigen::Index>(b + q * a), static_cast<Eigen::Index>(a + q * b)) = 1;
  return m;
}

/// Matrix of `op` re-indexed onto the local register `sites`.
dense::Matrix local_embed(const dense::LocalOperator& op, const std::vector<std::size_t>& sites, std::size_t q) {
  dense::LocalOperator r{{}, op.matrix};
  for (std::size_t s : op.sites) {
    auto it = std::find(sites.begin(), sites.end(), s);
    if (it == sites.end()) throw std::logic_error("operator outside local register");
    r.sites.push_back(static_cast<std::size_t>(it - sites.begin()));
  }
  return dense::embed(r, q, sites.size());
}

/// On-site matrix of generator j at site s.
dense::Matrix site_generator(const SymmetryRep& sym, std::size_t j, std::size_t s) {
  const auto& g = sym.generators().at(j);
  if (g.pauli) return dense::pauli_matrix(PauliOperator::single(1, 0, g.pauli->kind_at(s)));
  const auto q = static_cast<Eigen::Index>(sym.site_dim());
  dense::Matrix m = dense::Matrix::Zero(q, q);
  for (std::size_t h = 0; h < sym.site_dim(); ++h) m(static_cast<Eigen::Index>(g.shift[h]), static_cast<Eigen::Index>(h)) = 1;
  return m;
}

std::vector<dense::Complex> gate_diagonal(const DiagonalGate& g) {
  std::vector<dense::Complex> d = g.diagonal;
  if (g.sign < 0)
    for (auto& v : d) v = std::conj(v);
  return d;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::size_t DenseDoubledCircuit::depth() const {
  std::size_t d = 0;
  for (std::size_t l : layer) d = std::max(d, l + 1);
  return d;
}

// ---------------------------------------------------------------- spread

std::size_t qca_spread(const CliffordQca& u, const LatticeSpec& lattice) {
  const std::size_t n = u.num_qubits();
  if (lattice.num_sites() != n) throw std::invalid_argument("lattice and entangler sizes differ");
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (char k : {'X', 'Z'})
      for (std::size_t s : support(u.conjugate(PauliOperator::single(n, i, k)))) d = std::max(d, lattice.distance(i, s));
  return d;
}

std::size_t qca_spread(const CocycleCircuit& u, const LatticeSpec& lattice) {
  if (lattice.num_sites() != u.num_sites) throw std::invalid_argument("lattice and entangler sizes differ");
  std::size_t d = 0;
  for (const auto& g : u.gates)
    for (std::size_t a : g.sites)
      for (std::size_t b : g.sites) d = std::max(d, lattice.distance(a, b));
  return d;
}

// ---------------------------------------------------------------- doubled circuits

DoubledCircuit build_doubled_fdqc(const CliffordQca& u, const LatticeSpec& lattice, std::size_t max_spread) {
  const std::size_t n = u.num_qubits();
  const std::size_t spread = qca_spread(u, lattice);
  if (spread > max_spread)
    throw std::invalid_argument("entangler is not locality preserving: spread " + std::to_string(spread) +
                                " exceeds " + std::to_string(max_spread));
  DoubledCircuit out;
  out.circuit = CliffordCircuit(2 * n);
  GateLayer swaps;
  for (std::size_t i = 0; i < n; ++i) swaps.push_back(CliffordGate::named(GateKind::SWAP, {i, n + i}));
  out.circuit.add_layer(std::move(swaps));

  std::vector<GateLayer> layers;
  for (std::size_t i = 0; i < n; ++i) {
    SiteSet s = support(u.conjugate(PauliOperator::single(n, i, 'X')))
                    .united(support(u.conjugate(PauliOperator::single(n, i, 'Z'))))
                    .united(SiteSet{n + i});
    // v P v^dag = A s A^dag P A s A^dag with A = U (x) I.
    auto image = [&](const PauliOperator& p) {
      PauliOperator r = conjugate_low(u, p, true);
      r = swap_registers(r, n, i);
      r = conjugate_low(u, r, false);
      if (!(support(r).united(s) == s)) throw std::logic_error("conjugated SWAP leaves its support");
      return r.restricted(s);
    };
    std::vector<PauliOperator> xs, zs;
    for (std::size_t t : s) {
      xs.push_back(image(PauliOperator::single(2 * n, t, 'X')));
      zs.push_back(image(PauliOperator::single(2 * n, t, 'Z')));
    }
    // The v_i commute, so each goes to the first layer it fits in.
    CliffordGate v = CliffordGate::tableau(s.sites(), std::move(xs), std::move(zs));
    std::size_t k = 0;
    while (k < layers.size() && std::any_of(layers[k].begin(), layers[k].end(),
                                            [&](const CliffordGate& o) { return o.support().intersects(s); }))
      ++k;
    if (k == layers.size()) layers.emplace_back();
    layers[k].push_back(std::move(v));
  }
  out.conjugated_layers = layers.size();
  for (auto& l : layers) out.circuit.add_layer(std::move(l));
  return out;
}

DenseDoubledCircuit build_doubled_dense(const CocycleCircuit& u, const LatticeSpec& lattice, std::size_t max_spread) {
  const std::size_t n = u.num_sites;
  const std::size_t q = u.site_dim;
  const std::size_t spread = qca_spread(u, lattice);
  if (spread > max_spread)
    throw std::invalid_argument("entangler is not locality preserving: spread " + std::to_string(spread) +
                                " exceeds " + std::to_string(max_spread));
  DenseDoubledCircuit out;
  out.site_dim = q;
  out.num_sites = n;
  const dense::Matrix sw = swap_matrix(q);
  for (std::size_t i = 0; i < n; ++i) {
    out.gates.push_back({{i, n + i}, sw});
    out.layer.push_back(0);
  }
  // Gates away from site i cancel in (U (x) I) s_i (U^-1 (x) I).
  std::vector<std::size_t> last(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> sites{n + i};
    std::vector<const DiagonalGate*> local;
    for (const auto& g : u.gates)
      if (std::find(g.sites.begin(), g.sites.end(), i) != g.sites.end()) {
        local.push_back(&g);
        sites.insert(g.sites.begin(), g.sites.end());
      }
    const std::vector<std::size_t> sv(sites.begin(), sites.end());
    const auto dim = static_cast<Eigen::Index>(dense::checked_dimension(q, sv.size()));
    dense::Matrix d = dense::Matrix::Identity(dim, dim);
    for (const auto* g : local) {
      const auto diag = gate_diagonal(*g);
      dense::Matrix m = dense::Matrix::Zero(static_cast<Eigen::Index>(diag.size()), static_cast<Eigen::Index>(diag.size()));
      for (std::size_t k = 0; k < diag.size(); ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = diag[k];
      d = local_embed({g->sites, m}, sv, q) * d;
    }
    const dense::Matrix s = local_embed({{i, n + i}, sw}, sv, q);
    std::size_t layer = 1;
    for (std::size_t t : sv) layer = std::max(layer, last[t] + 1);
    for (std::size_t t : sv) last[t] = layer;
    out.gates.push_back({sv, d * s * d.adjoint()});
    out.layer.push_back(layer);
  }
  std::vector<std::size_t> order(out.gates.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out.layer[a] < out.layer[b]; });
  DenseDoubledCircuit sorted = out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted.gates[k] = out.gates[order[k]];
    sorted.layer[k] = out.layer[order[k]];
  }
  return sorted;
}

// ---------------------------------------------------------------- audits

bool audit_gate_symmetric(const CliffordGate& gate, const SymmetryRep& symmetry) {
  if (!symmetry.is_pauli()) return false;
  for (std::size_t j = 0; j < symmetry.generators().size(); ++j) {
    const PauliOperator g = symmetry.truncated(j, gate.support());
    if (!(gate.conjugate(g) == g)) return false;
  }
  return true;
}

bool audit_gate_symmetric(const dense::LocalOperator& gate, const SymmetryRep& symmetry, double tol) {
  const std::size_t q = symmetry.site_dim();
  for (std::size_t j = 0; j < symmetry.generators().size(); ++j) {
    const auto d = static_cast<Eigen::Index>(dense::checked_dimension(q, gate.sites.size()));
    dense::Matrix g = dense::Matrix::Identity(d, d);
    for (std::size_t k = 0; k < gate.sites.size(); ++k)
      g = dense::embed({{k}, site_generator(symmetry, j, gate.sites[k])}, q, gate.sites.size()) * g;
    if ((gate.matrix * g - g * gate.matrix).norm() > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------- catalysis

nlohmann::json CatalysisReport::to_json() const {
  return {{"model", model},
          {"catalyst", catalyst},
          {"engine", engine_name(engine)},
          {"mixed", mixed},
          {"depth", depth},
          {"logical_layers", logical_layers},
          {"max_support", max_support},
          {"gates", gates},
          {"gates_failing_audit", gates_failing_audit},
          {"audit_pass", audit_pass},
          {"match_kind", match_kind},
          {"overlap", overlap},
          {"state_match", state_match},
          {"wall_ms", wall_ms},
          {"pass", pass()}};
}

CatalysisReport verify_catalysis(const ModelBundle& bundle, const Catalyst& catalyst) {
  if (bundle.is_clifford()) return verify_catalysis(bundle, catalyst, build_doubled_fdqc(bundle.clifford_entangler(), bundle.lattice));
  const auto t0 = std::chrono::steady_clock::now();
  CatalysisReport r;
  r.model = bundle.name;
  r.catalyst = catalyst.name;
  r.engine = Engine::Dense;
  if (catalyst.engine() != Engine::Dense) throw std::invalid_argument("qudit bundles take dense catalysts");
  const auto doubled = build_doubled_dense(bundle.cocycle_entangler(), bundle.lattice);
  const SymmetryRep sym2 = bundle.symmetry.doubled();
  r.depth = doubled.depth();
  r.gates = doubled.gates.size();
  for (const auto& g : doubled.gates) {
    r.max_support = std::max(r.max_support, g.sites.size());
    if (!audit_gate_symmetric(g, sym2)) ++r.gates_failing_audit;
  }
  r.audit_pass = r.gates_failing_audit == 0;
  auto joint = bundle.trivial_dense().tensor(catalyst.dense_state());
  joint.apply(doubled.gates);
  const auto expected = bundle.target_dense().tensor(catalyst.dense_state());
  r.match_kind = "overlap-modulus";
  r.overlap = dense::overlap_modulus(joint, expected);
  r.state_match = r.overlap > 1 - 1e-10;
  r.wall_ms = elapsed_ms(t0);
  return r;
}

CatalysisReport verify_catalysis(const ModelBundle& bundle, const Catalyst& catalyst, const DoubledCircuit& doubled) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = bundle.num_sites();
  if (doubled.circuit.num_qubits() != 2 * n) throw std::invalid_argument("doubled circuit size mismatch");
  CatalysisReport r;
  r.model = bundle.name;
  r.catalyst = catalyst.name;
  r.engine = catalyst.engine();
  r.mixed = catalyst.is_mixed();
  r.depth = doubled.depth();
  r.gates = doubled.circuit.gate_count();
  r.max_support = doubled.circuit.max_support();
  const SymmetryRep sym2 = bundle.symmetry.doubled();
  for (const auto& layer : doubled.circuit.layers())
    for (const auto& g : layer)
      if (!audit_gate_symmetric(g, sym2)) ++r.gates_failing_audit;
  r.audit_pass = r.gates_failing_audit == 0;
  if (catalyst.engine() == Engine::Stabilizer) {
    const auto& a = catalyst.stabilizer();
    if (a.num_qubits() != n) throw std::invalid_argument("catalyst size mismatch");
    const auto out = bundle.trivial_stabilizer().tensor(a).apply(doubled.circuit);
    r.match_kind = r.mixed ? "operator-equality" : "exact";
    const auto expected = bundle.target_stabilizer().tensor(a);
    r.state_match = out.same_state(expected);
    try {
      r.overlap = fidelity(out, expected).to_double();
    } catch (const UnsupportedCase&) {
      r.overlap = out.is_pure() ? pure_overlap(out, expected).to_double() : std::numeric_limits<double>::quiet_NaN();
    }
  } else {
    const auto& a = catalyst.dense_state();
    if (a.num_sites() != n) throw std::invalid_argument("catalyst size mismatch");
    auto joint = bundle.trivial_dense().tensor(a);
    joint.apply(dense::circuit_unitaries(doubled.circuit));
    r.match_kind = "overlap-modulus";
    r.overlap = dense::overlap_modulus(joint, bundle.target_dense().tensor(a));
    r.state_match = r.overlap > 1 - 1e-10;
  }
  r.wall_ms = elapsed_ms(t0);
  return r;
}

// ---------------------------------------------------------------- invariant

SiteSet Interval::sites(std::size_t n) const {
  std::vector<std::size_t> v;
  for (std::size_t k = 0; k < length; ++k) v.push_back((start + k) % n);
  return SiteSet(std::move(v));
}

std::pair<Interval, Interval> default_regions(std::size_t n) {
  return {Interval{0, n / 2}, Interval{n / 4, 3 * n / 4 - n / 4}};
}

namespace {

void check_regions(std::size_t n, std::size_t spread, const Interval& a, const Interval& b) {
  const std::size_t need = 2 * spread + 1;
  const std::size_t ob = (b.start + n - a.start % n) % n;
  const std::size_t oc = a.length;
  const std::size_t od = ob + b.length;
  if (!(ob > 0 && ob < oc && oc < od && od < n))
    throw RegionError("regions must interleave as a < b < c < d around the ring");
  if (ob < need || oc - ob < need || od - oc < need || n - od < need)
    throw RegionError("region separations below " + std::to_string(need));
}

/// Dense application of a group element restricted to `sites`.
void apply_element(const SymmetryRep& sym, std::size_t element, const SiteSet& sites, bool inverse,
                   dense::DenseState& psi) {
  const auto coords = sym.group().element(element);
  if (sym.is_pauli()) {
    PauliOperator p(sym.num_sites());
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (coords[j] % 2) p = p * sym.truncated(j, sites);
    psi.apply_pauli(inverse ? p.dagger() : p);
    return;
  }
  const std::size_t q = sym.site_dim();
  std::vector<std::size_t> perm(q);
  for (std::size_t h = 0; h < q; ++h) perm[h] = h;
  for (std::size_t j = 0; j < coords.size(); ++j)
    for (int64_t k = 0; k < coords[j]; ++k)
      for (auto& h : perm) h = sym.generators()[j].shift[h];
  const auto qi = static_cast<Eigen::Index>(q);
  dense::Matrix m = dense::Matrix::Zero(qi, qi);
  for (std::size_t h = 0; h < q; ++h) m(static_cast<Eigen::Index>(perm[h]), static_cast<Eigen::Index>(h)) = 1;
  if (inverse) m.adjointInPlace();
  dense::DenseCircuit c;
  for (std::size_t s : sites) c.push_back({{s}, m});
  psi.apply(c);
}

std::size_t entangler_spread(const Entangler& u, std::size_t n) {
  const auto ring = LatticeSpec::ring(n);
  if (const auto* c = std::get_if<CliffordQca>(&u)) return qca_spread(*c, ring);
  return qca_spread(std::get<CocycleCircuit>(u), ring);
}

}  // namespace

bool InvariantTable::all_trivial(double tol) const {
  for (const auto& c : entries)
    if (std::abs(c - 1.0) > tol) return false;
  return true;
}

bool InvariantTable::is_bilinear(const FiniteAbelianGroup& group, double tol) const {
  const std::size_t m = group_order;
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t g2 = 0; g2 < m; ++g2) {
      const std::size_t gg = group.add(g, g2);
      for (std::size_t h = 0; h < m; ++h) {
        if (std::abs(at(gg, h) - at(g, h) * at(g2, h)) > tol) return false;
        if (std::abs(at(h, gg) - at(h, g) * at(h, g2)) > tol) return false;
      }
    }
  return true;
}

nlohmann::json InvariantTable::to_json(const FiniteAbelianGroup& group) const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t g = 0; g < group_order; ++g)
    for (std::size_t h = 0; h < group_order; ++h) {
      const auto c = at(g, h);
      nlohmann::json e = {{"g", group.element(g)}, {"h", group.element(h)}, {"re", c.real()}, {"im", c.imag()}};
      if (exact) e["i_power"] = i_powers[g * group_order + h];
      rows.push_back(std::move(e));
    }
  return {{"regions", {{"A", {a.start, a.start + a.length}}, {"B", {b.start, b.start + b.length}}}},
          {"exact", exact},
          {"entries", std::move(rows)}};
}

InvariantTable spt_invariant(const CliffordQca& u, const SymmetryRep& symmetry, const Interval& a, const Interval& b) {
  const std::size_t n = u.num_qubits();
  if (!symmetry.is_pauli() || symmetry.num_sites() != n) throw std::invalid_argument("Pauli symmetry on the entangler's register required");
  check_regions(n, qca_spread(u, LatticeSpec::ring(n)), a, b);
  InvariantTable t;
  t.group_order = symmetry.group().order();
  t.a = a;
  t.b = b;
  t.exact = true;
  const SiteSet sa = a.sites(n), sb = b.sites(n);
  auto truncate = [&](std::size_t element, const SiteSet& sites) {
    const auto coords = symmetry.group().element(element);
    PauliOperator p(n);
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (coords[j] % 2) p = p * symmetry.truncated(j, sites);
    return p;
  };
  for (std::size_t g = 0; g < t.group_order; ++g) {
    const PauliOperator x = u.conjugate_inverse(truncate(g, sa));
    for (std::size_t h = 0; h < t.group_order; ++h) {
      const PauliOperator ub = truncate(h, sb);
      const PauliOperator c = x * ub * x.dagger() * ub.dagger();
      if (!c.is_identity_up_to_phase()) throw RegionError("commutator is not proportional to the identity; regions too small");
      const int k = c.phase();
      t.i_powers.push_back(k);
      static const std::complex<double> ik[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      t.entries.push_back(ik[k]);
    }
  }
  return t;
}

InvariantTable spt_invariant_dense(const Entangler& u, const SymmetryRep& symmetry, const Interval& a, const Interval& b) {
  const std::size_t n = symmetry.num_sites();
  const std::size_t q = symmetry.site_dim();
  check_regions(n, entangler_spread(u, n), a, b);
  InvariantTable t;
  t.group_order = symmetry.group().order();
  t.a = a;
  t.b = b;
  t.exact = q == 2;
  std::mt19937_64 rng(0xc0ffee);
  std::normal_distribution<double> nd;
  dense::Vector v(static_cast<Eigen::Index>(dense::checked_dimension(q, n)));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = dense::Complex(nd(rng), nd(rng));
  const auto psi = dense::DenseState::from_amplitudes(q, n, v / v.norm());
  const SiteSet sa = a.sites(n), sb = b.sites(n);
  for (std::size_t g = 0; g < t.group_order; ++g)
    for (std::size_t h = 0; h < t.group_order; ++h) {
      auto w = psi;
      apply_element(symmetry, h, sb, true, w);
      apply_entangler(u, w);
      apply_element(symmetry, g, sa, true, w);
      apply_entangler(u, w, true);
      apply_element(symmetry, h, sb, false, w);
      apply_entangler(u, w);
      apply_element(symmetry, g, sa, false, w);
      apply_entangler(u, w, true);
      const auto c = psi.overlap(w);
      if ((w.amplitudes() - c * psi.amplitudes()).norm() > 1e-8)
        throw RegionError("commutator is not proportional to the identity; regions too small");
      t.entries.push_back(c);
      if (t.exact) {
        const int k = static_cast<int>(std::lround(std::arg(c) / (M_PI / 2))) & 3;
        t.i_powers.push_back(k);
      }
    }
  return t;
}

// ---------------------------------------------------------------- localization

namespace {

struct Endpoints {
  SiteSet left, right;
};

Endpoints endpoint_regions(std::size_t n, const Interval& gamma, std::size_t r) {
  if (r == 0) throw std::invalid_argument("radius must be positive");
  if (gamma.length < 4 * r) throw std::invalid_argument("interval shorter than 4 * radius");
  if (gamma.length > n || n - gamma.length < 4 * r) throw std::invalid_argument("complement shorter than 4 * radius");
  std::vector<std::size_t> l, rr;
  for (std::size_t k = 0; k < 2 * r; ++k) {
    l.push_back((gamma.start + n - r + k) % n);
    rr.push_back((gamma.start + gamma.length - r + k) % n);
  }
  return {SiteSet(std::move(l)), SiteSet(std::move(rr))};
}

PauliOperator from_bits(std::size_t n, const std::vector<std::size_t>& sites, const gf2::BitVector& w) {
  PauliOperator p(n);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (w.get(2 * k)) p.x().set(sites[k], true);
    if (w.get(2 * k + 1)) p.z().set(sites[k], true);
  }
  return p;
}

LocalizationWitness split(const PauliOperator& w, const Endpoints& e, int phase) {
  const std::size_t n = w.num_qubits();
  LocalizationWitness out{PauliOperator(n), PauliOperator(n)};
  for (std::size_t s : e.left) out.left.set_kind(s, w.kind_at(s));
  for (std::size_t s : e.right) out.right.set_kind(s, w.kind_at(s));
  out.left.set_phase(phase);
  return out;
}

PauliOperator truncated_generator(const SymmetryRep& sym, std::size_t generator, const Interval& gamma) {
  return sym.truncated(generator, gamma.sites(sym.num_sites()));
}

}  // namespace

std::optional<LocalizationWitness> strong_localization(const StabilizerMixture& rho, const SymmetryRep& symmetry,
                                                       std::size_t generator, const Interval& gamma,
                                                       std::size_t radius) {
  const std::size_t n = rho.num_qubits();
  const Endpoints e = endpoint_regions(n, gamma, radius);
  const PauliOperator ug = truncated_generator(symmetry, generator, gamma);
  const std::vector<std::size_t> sites = e.left.united(e.right).sites();
  const std::size_t k = rho.rank();
  // Columns: stabilizer generators, then x/z unit vectors on the endpoints.
  gf2::BitMatrix a(2 * n, k + 2 * sites.size());
  for (std::size_t j = 0; j < k; ++j) {
    const auto v = rho.generators()[j].symplectic();
    for (std::size_t r = 0; r < 2 * n; ++r) a.set(r, j, v.get(r));
  }
  for (std::size_t t = 0; t < sites.size(); ++t) {
    a.set(sites[t], k + 2 * t, true);
    a.set(n + sites[t], k + 2 * t + 1, true);
  }
  const auto sol = gf2::solve(a, ug.symplectic());
  if (!sol) return std::nullopt;
  gf2::BitVector w(2 * sites.size());
  for (std::size_t t = 0; t < 2 * sites.size(); ++t) w.set(t, sol->get(k + t));
  const PauliOperator wp = from_bits(n, sites, w);
  // U W (W hermitian) is i^m Q with Q a phase-0 Pauli in the group up to sign s.
  PauliOperator prod = ug * wp;
  const int m = prod.phase();
  prod.set_phase(0);
  const auto s = rho.group_sign(prod);
  if (!s) throw std::logic_error("localization solve left the stabilizer group");
  // W' = c W with c = s i^m makes U W'^dag a +1 group element.
  const int phase = m + (*s < 0 ? 2 : 0);
  auto out = split(wp, e, phase);
  PauliOperator check = ug * (out.left * out.right).dagger();
  if (!check.is_hermitian() || !rho.contains(check)) throw std::logic_error("localization witness failed verification");
  return out;
}

std::optional<LocalizationWitness> weak_localization(const StabilizerMixture& rho, const SymmetryRep& symmetry,
                                                     std::size_t generator, const Interval& gamma,
                                                     std::size_t radius) {
  const std::size_t n = rho.num_qubits();
  const Endpoints e = endpoint_regions(n, gamma, radius);
  const PauliOperator ug = truncated_generator(symmetry, generator, gamma);
  const std::vector<std::size_t> sites = e.left.united(e.right).sites();
  const auto& gens = rho.generators();
  // W must anticommute with exactly the generators U anticommutes with.
  gf2::BitMatrix a(gens.size(), 2 * sites.size());
  gf2::BitVector b(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t t = 0; t < sites.size(); ++t) {
      a.set(j, 2 * t, gens[j].z().get(sites[t]));
      a.set(j, 2 * t + 1, gens[j].x().get(sites[t]));
    }
    b.set(j, !commutes(ug, gens[j]));
  }
  const auto sol = gf2::solve(a, b);
  if (!sol) return std::nullopt;
  const PauliOperator wp = from_bits(n, sites, *sol);
  if (!rho.conjugated_by(ug).same_state(rho.conjugated_by(wp)))
    throw std::logic_error("weak localization witness failed verification");
  return split(wp, e, 0);
}

// ---------------------------------------------------------------- correlators

DyadicValue fidelity_correlator(const StabilizerMixture& rho, const PauliOperator& oi, const PauliOperator& oj) {
  return fidelity(rho, rho.conjugated_by(oi * oj.dagger()));
}

double fidelity_correlator(const dense::Matrix& rho, const dense::Matrix& oi, const dense::Matrix& oj) {
  const dense::Matrix o = oi * oj.adjoint();
  return dense::fidelity(rho, o * rho * o.adjoint());
}

DisorderParameter disorder_parameter(const StabilizerMixture& rho, const PauliOperator& string) {
  return {rho.expectation(string), fidelity(rho, rho.conjugated_by(string))};
}

}  // namespace catlab
