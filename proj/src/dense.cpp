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

#include "catlab/dense.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace catlab::dense {

namespace {

std::size_t env_limit(const char* name, std::size_t fallback) {
  if (const char* v = std::getenv(name)) {
    try {
      return static_cast<std::size_t>(std::stoull(v));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad value for ") + name);
    }
  }
  return fallback;
}

// Offsets of every local configuration and the strides of each site.
struct LocalLayout {
  std::vector<std::size_t> strides;
  std::vector<std::size_t> offsets;
};

LocalLayout layout(std::size_t q, std::size_t n, const std::vector<std::size_t>& sites) {
  LocalLayout l;
  std::vector<std::size_t> global(n, 1);
  for (std::size_t j = 1; j < n; ++j) global[j] = global[j - 1] * q;
  for (std::size_t s : sites) {
    if (s >= n) throw std::out_of_range("operator site outside register");
    l.strides.push_back(global[s]);
  }
  std::size_t d = 1;
  for (std::size_t j = 0; j < sites.size(); ++j) d *= q;
  l.offsets.resize(d);
  for (std::size_t loc = 0; loc < d; ++loc) {
    std::size_t off = 0, t = loc;
    for (std::size_t j = 0; j < sites.size(); ++j, t /= q) off += (t % q) * l.strides[j];
    l.offsets[loc] = off;
  }
  return l;
}

bool local_zero(std::size_t idx, std::size_t q, const LocalLayout& l) {
  for (std::size_t s : l.strides)
    if ((idx / s) % q != 0) return false;
  return true;
}

std::size_t local_index(std::size_t idx, std::size_t q, const LocalLayout& l) {
  std::size_t loc = 0, mult = 1;
  for (std::size_t s : l.strides) {
    loc += ((idx / s) % q) * mult;
    mult *= q;
  }
  return loc;
}

void check_distinct(const std::vector<std::size_t>& sites) {
  auto sorted = sites;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("operator sites must be distinct");
}

const Complex kIPow[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};

uint64_t mask_of(const gf2::BitVector& v) {
  if (v.size() > 64) throw std::invalid_argument("dense Pauli limited to 64 qubits");
  return v.size() ? v.words()[0] : 0;
}

void add_embedded(Matrix& m, const LocalOperator& op, std::size_t q, std::size_t n) {
  const auto l = layout(q, n, op.sites);
  const auto d = static_cast<Eigen::Index>(l.offsets.size());
  if (op.matrix.rows() != d || op.matrix.cols() != d) throw std::invalid_argument("operator has wrong dimension");
  for (std::size_t col = 0; col < static_cast<std::size_t>(m.cols()); ++col) {
    const std::size_t loc = local_index(col, q, l);
    const std::size_t rest = col - l.offsets[loc];
    for (std::size_t a = 0; a < l.offsets.size(); ++a) {
      const Complex v = op.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(loc));
      if (v != Complex(0)) m(static_cast<Eigen::Index>(rest + l.offsets[a]), static_cast<Eigen::Index>(col)) += v;
    }
  }
}

Vector pauli_times(const PauliOperator& p, const Vector& v) {
  const uint64_t xm = mask_of(p.x()), zm = mask_of(p.z());
  const Complex pre = kIPow[(p.phase() + std::popcount(xm & zm)) % 4];
  Vector out(v.size());
  for (uint64_t i = 0; i < static_cast<uint64_t>(v.size()); ++i) {
    Complex a = pre * v(static_cast<Eigen::Index>(i));
    if (std::popcount(i & zm) & 1) a = -a;
    out(static_cast<Eigen::Index>(i ^ xm)) = a;
  }
  return out;
}

Matrix sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const double cutoff = 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::VectorXd ev = es.eigenvalues().unaryExpr([&](double v) { return v > cutoff ? std::sqrt(v) : 0.0; });
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::size_t amplitude_limit() { return env_limit("CATLAB_DENSE_LIMIT", std::size_t{1} << 20); }
std::size_t eig_limit() { return env_limit("CATLAB_DENSE_EIG_LIMIT", std::size_t{1} << 14); }

std::size_t checked_dimension(std::size_t q, std::size_t n) {
  if (q < 2) throw std::invalid_argument("site dimension must be at least 2");
  const std::size_t limit = amplitude_limit();
  std::size_t d = 1;
  for (std::size_t j = 0; j < n; ++j) {
    d *= q;
    if (d > limit) throw std::length_error("dense dimension exceeds limit " + std::to_string(limit));
  }
  return d;
}

DenseState::DenseState(std::size_t q, std::size_t n) : q_(q), n_(n) {
  amps_ = Vector::Zero(static_cast<Eigen::Index>(checked_dimension(q, n)));
  amps_(0) = 1.0;
}

DenseState DenseState::from_amplitudes(std::size_t q, std::size_t n, Vector amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != checked_dimension(q, n))
    throw std::invalid_argument("amplitude vector has wrong length");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) throw std::invalid_argument("state is not normalized");
  DenseState s;
  s.q_ = q;
  s.n_ = n;
  s.amps_ = std::move(amplitudes);
  return s;
}

DenseState DenseState::product(std::size_t q, std::size_t n, const Vector& local) {
  if (static_cast<std::size_t>(local.size()) != q) throw std::invalid_argument("local state has wrong dimension");
  Vector v = Vector::Ones(static_cast<Eigen::Index>(checked_dimension(q, n)));
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(v.size()); ++idx) {
    std::size_t t = idx;
    for (std::size_t j = 0; j < n; ++j, t /= q) v(idx) *= local(t % q);
  }
  return from_amplitudes(q, n, v / v.norm());
}

DenseState DenseState::basis(std::size_t q, const std::vector<std::size_t>& digits) {
  DenseState s(q, digits.size());
  std::size_t idx = 0, mult = 1;
  for (std::size_t d : digits) {
    if (d >= q) throw std::invalid_argument("basis digit out of range");
    idx += d * mult;
    mult *= q;
  }
  s.amps_.setZero();
  s.amps_(static_cast<Eigen::Index>(idx)) = 1.0;
  return s;
}

void DenseState::apply(const LocalOperator& u) {
  check_distinct(u.sites);
  const auto l = layout(q_, n_, u.sites);
  const auto d = static_cast<Eigen::Index>(l.offsets.size());
  if (u.matrix.rows() != d || u.matrix.cols() != d) throw std::invalid_argument("operator has wrong dimension");
  if ((u.matrix.adjoint() * u.matrix - Matrix::Identity(d, d)).norm() > 1e-10)
    throw std::invalid_argument("operator is not unitary");
  Vector in(d);
  const std::size_t dimension = dim();
  for (std::size_t base = 0; base < dimension; ++base) {
    if (!local_zero(base, q_, l)) continue;
    for (Eigen::Index a = 0; a < d; ++a) in(a) = amps_(static_cast<Eigen::Index>(base + l.offsets[a]));
    Vector out = u.matrix * in;
    for (Eigen::Index a = 0; a < d; ++a) amps_(static_cast<Eigen::Index>(base + l.offsets[a])) = out(a);
  }
}

void DenseState::apply(const DenseCircuit& c) {
  for (const auto& g : c) apply(g);
}

void DenseState::apply_diagonal(const std::vector<std::size_t>& sites, const std::vector<Complex>& diagonal) {
  check_distinct(sites);
  const auto l = layout(q_, n_, sites);
  if (diagonal.size() != l.offsets.size()) throw std::invalid_argument("diagonal has wrong length");
  for (const auto& c : diagonal)
    if (std::abs(std::abs(c) - 1.0) > 1e-10) throw std::invalid_argument("diagonal entries must be phases");
  for (std::size_t idx = 0; idx < dim(); ++idx) amps_(static_cast<Eigen::Index>(idx)) *= diagonal[local_index(idx, q_, l)];
}

void DenseState::apply_pauli(const PauliOperator& p) {
  if (q_ != 2 || p.num_qubits() != n_) throw std::invalid_argument("Pauli does not match qubit register");
  amps_ = pauli_times(p, amps_);
}

void DenseState::permute_sites(const std::vector<std::size_t>& image) {
  if (image.size() != n_) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::size_t> stride(n_, 1);
  for (std::size_t j = 1; j < n_; ++j) stride[j] = stride[j - 1] * q_;
  Vector out(amps_.size());
  for (std::size_t idx = 0; idx < dim(); ++idx) {
    std::size_t t = idx, dst = 0;
    for (std::size_t j = 0; j < n_; ++j, t /= q_) dst += (t % q_) * stride[image[j]];
    out(static_cast<Eigen::Index>(dst)) = amps_(static_cast<Eigen::Index>(idx));
  }
  amps_ = std::move(out);
}

Complex DenseState::overlap(const DenseState& other) const {
  if (q_ != other.q_ || n_ != other.n_) throw std::invalid_argument("state shape mismatch");
  return amps_.dot(other.amps_);
}

DenseState DenseState::tensor(const DenseState& other) const {
  if (q_ != other.q_) throw std::invalid_argument("site dimension mismatch");
  checked_dimension(q_, n_ + other.n_);
  Vector v(static_cast<Eigen::Index>(dim() * other.dim()));
  for (std::size_t hi = 0; hi < other.dim(); ++hi)
    v.segment(static_cast<Eigen::Index>(hi * dim()), static_cast<Eigen::Index>(dim())) =
        other.amps_(static_cast<Eigen::Index>(hi)) * amps_;
  return from_amplitudes(q_, n_ + other.n_, v);
}

void Hamiltonian::add_term(LocalOperator term) {
  check_distinct(term.sites);
  const auto l = layout(q_, n_, term.sites);
  const auto d = static_cast<Eigen::Index>(l.offsets.size());
  if (term.matrix.rows() != d || term.matrix.cols() != d) throw std::invalid_argument("term has wrong dimension");
  if ((term.matrix - term.matrix.adjoint()).norm() > 1e-12) throw std::invalid_argument("term is not Hermitian");
  terms_.push_back(std::move(term));
}

void Hamiltonian::add_pauli(double coefficient, const PauliOperator& p) {
  if (q_ != 2 || p.num_qubits() != n_) throw std::invalid_argument("Pauli does not match qubit register");
  auto sites = support(p).sites();
  if (sites.empty()) throw std::invalid_argument("identity term");
  Matrix local = pauli_matrix(p.restricted(SiteSet(sites)));
  add_term({sites, coefficient * local});
}

void Hamiltonian::append(const Hamiltonian& other) {
  if (other.q_ != q_ || other.n_ != n_) throw std::invalid_argument("Hamiltonian shape mismatch");
  for (const auto& t : other.terms_) terms_.push_back(t);
}

Vector Hamiltonian::apply(const Vector& v) const {
  Vector out = Vector::Zero(v.size());
  const std::size_t dimension = static_cast<std::size_t>(v.size());
  for (const auto& t : terms_) {
    const auto l = layout(q_, n_, t.sites);
    const auto d = static_cast<Eigen::Index>(l.offsets.size());
    Vector in(d);
    for (std::size_t base = 0; base < dimension; ++base) {
      if (!local_zero(base, q_, l)) continue;
      for (Eigen::Index a = 0; a < d; ++a) in(a) = v(static_cast<Eigen::Index>(base + l.offsets[a]));
      Vector r = t.matrix * in;
      for (Eigen::Index a = 0; a < d; ++a) out(static_cast<Eigen::Index>(base + l.offsets[a])) += r(a);
    }
  }
  return out;
}

Matrix Hamiltonian::to_matrix() const {
  const std::size_t d = checked_dimension(q_, n_);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& t : terms_) add_embedded(m, t, q_, n_);
  return m;
}

GroundSpace ground_state(const Hamiltonian& h, double tolerance) {
  const std::size_t d = checked_dimension(h.site_dim(), h.num_sites());
  if (d > eig_limit()) throw std::length_error("dimension exceeds eigensolver limit " + std::to_string(eig_limit()));
  Matrix m = h.to_matrix();
  Eigen::VectorXd values;
  Matrix vectors;
  if (m.imag().norm() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
    values = es.eigenvalues();
    vectors = es.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    values = es.eigenvalues();
    vectors = es.eigenvectors();
  }
  GroundSpace g;
  g.energy = values(0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) - g.energy <= tolerance) {
      g.basis.push_back(vectors.col(i));
    } else {
      g.gap = values(i) - g.energy;
      break;
    }
  }
  return g;
}

DenseState symmetrize_in_ground_space(std::size_t q, std::size_t n, const std::vector<Vector>& basis,
                                    const std::vector<DenseCircuit>& symmetries) {
  if (basis.empty()) throw std::invalid_argument("empty ground space");
  const auto g = static_cast<Eigen::Index>(basis.size());
  Matrix b(basis.front().size(), g);
  for (Eigen::Index i = 0; i < g; ++i) b.col(i) = basis[static_cast<std::size_t>(i)];
  Matrix stacked(0, g);
  for (const auto& sym : symmetries) {
    Matrix sb(b.rows(), g);
    for (Eigen::Index i = 0; i < g; ++i) {
      DenseState s = DenseState::from_amplitudes(q, n, b.col(i));
      s.apply(sym);
      sb.col(i) = s.amplitudes();
    }
    Matrix restricted = b.adjoint() * sb;
    if ((sb - b * restricted).norm() > 1e-8) throw std::runtime_error("symmetry does not preserve the ground space");
    Matrix block = restricted - Matrix::Identity(g, g);
    Matrix grown(stacked.rows() + g, g);
    grown << stacked, block;
    stacked = std::move(grown);
  }
  Vector coeff;
  if (stacked.rows() == 0) {
    coeff = Vector::Unit(g, 0);
  } else {
    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
    const Eigen::Index last = g - 1;
    if (svd.singularValues().size() == g && svd.singularValues()(last) > 1e-8)
      throw std::runtime_error("no symmetric vector in the ground space");
    coeff = svd.matrixV().col(last);
  }
  Vector v = b * coeff;
  // Fix the global phase by making the largest amplitude real and positive.
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  v *= std::conj(v(arg)) / std::abs(v(arg));
  return DenseState::from_amplitudes(q, n, v / v.norm());
}

Matrix density_from_mixture(const std::vector<double>& weights, const std::vector<DenseState>& states) {
  if (weights.size() != states.size() || states.empty()) throw std::invalid_argument("weights and states mismatch");
  double total = 0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("weights must sum to one");
  const auto d = static_cast<Eigen::Index>(states.front().dim());
  Matrix rho = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i) rho += weights[i] * density_of(states[i]);
  return rho;
}

Matrix density_of(const DenseState& s) { return s.amplitudes() * s.amplitudes().adjoint(); }

double fidelity(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows()) throw std::invalid_argument("density matrix size mismatch");
  // Tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(rho) sqrt(sigma).
  Eigen::BDCSVD<Matrix> svd(sqrt_psd(rho) * sqrt_psd(sigma));
  return svd.singularValues().sum();
}

double renyi_ratio(const Matrix& rho, const Matrix& sigma, int order) {
  if (order < 1) throw std::invalid_argument("Renyi order must be >= 1");
  Matrix sp = Matrix::Identity(rho.rows(), rho.cols());
  Matrix rp = rho;
  for (int i = 1; i < order; ++i) {
    sp = sp * sigma;
    rp = rp * rho;
  }
  return (rho * sp).trace().real() / rp.trace().real();
}

Matrix pauli_matrix(const PauliOperator& p) {
  const std::size_t d = checked_dimension(2, p.num_qubits());
  const uint64_t xm = mask_of(p.x()), zm = mask_of(p.z());
  const Complex pre = kIPow[(p.phase() + std::popcount(xm & zm)) % 4];
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (uint64_t i = 0; i < d; ++i)
    m(static_cast<Eigen::Index>(i ^ xm), static_cast<Eigen::Index>(i)) = (std::popcount(i & zm) & 1) ? -pre : pre;
  return m;
}

LocalOperator gate_unitary(const CliffordGate& g) {
  const CliffordGate t = g.as_tableau();
  const std::size_t m = t.targets().size();
  const DenseState zero_image = state_of(StabilizerMixture(m, t.z_images()));
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << m);
  Matrix u(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    DenseState s = zero_image;
    for (std::size_t j = 0; j < m; ++j)
      if ((col >> j) & 1) s.apply_pauli(t.x_images()[j]);
    u.col(col) = s.amplitudes();
  }
  return {t.targets(), u};
}

DenseCircuit circuit_unitaries(const CliffordCircuit& c) {
  DenseCircuit out;
  for (const auto& layer : c.layers())
    for (const auto& g : layer) out.push_back(gate_unitary(g));
  return out;
}

DenseState state_of(const StabilizerMixture& s) {
  if (!s.is_pure()) throw std::invalid_argument("state_of needs a pure stabilizer state");
  const std::size_t n = s.num_qubits();
  const auto canon = s.canonical();
  std::vector<gf2::BitVector> rows;
  std::vector<bool> signs;
  for (const auto& g : canon.generators()) {
    if (g.x().any()) continue;
    rows.push_back(g.z());
    signs.push_back(g.phase() == 2);
  }
  std::vector<std::size_t> digits(n, 0);
  if (!rows.empty()) {
    gf2::BitVector b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) b.set(i, signs[i]);
    auto x = gf2::solve(gf2::BitMatrix::from_rows(rows, n), b);
    if (!x) throw std::logic_error("inconsistent Z-type stabilizers");
    for (std::size_t j = 0; j < n; ++j) digits[j] = x->get(j);
  }
  DenseState st = DenseState::basis(2, digits);
  Vector v = st.amplitudes();
  for (const auto& g : s.generators()) v = (v + pauli_times(g, v)) / 2.0;
  return DenseState::from_amplitudes(2, n, v / v.norm());
}

Matrix density_of(const StabilizerMixture& s) {
  const std::size_t n = s.num_qubits();
  const auto d = static_cast<Eigen::Index>(checked_dimension(2, n));
  Matrix rho = Matrix::Identity(d, d);
  for (const auto& g : s.generators()) rho = rho * (Matrix::Identity(d, d) + pauli_matrix(g)) / 2.0;
  return rho / rho.trace().real();
}

double overlap_modulus(const DenseState& a, const DenseState& b) { return std::abs(a.overlap(b)); }

Matrix embed(const LocalOperator& op, std::size_t q, std::size_t n) {
  const std::size_t d = checked_dimension(q, n);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  add_embedded(m, op, q, n);
  return m;
}

}  // namespace catlab::dense
