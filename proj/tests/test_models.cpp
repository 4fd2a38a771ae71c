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


#include <gtest/gtest.h>

#include <random>
#include <set>

#include "catlab/models.hpp"
#include "oracle.hpp"

using namespace catlab;

namespace {

ModelBundle ring_model(const std::string& name, std::size_t n) {
  ModelParams p;
  p.n = n;
  return build_model(name, p);
}

ModelBundle torus_model(const std::string& name, std::size_t l) {
  ModelParams p;
  p.lx = p.ly = l;
  return build_model(name, p);
}

PauliOperator ops(std::size_t n, std::vector<std::pair<std::size_t, char>> v) {
  PauliOperator p(n);
  for (auto [s, k] : v) p = p * PauliOperator::single(n, s, k);
  return p;
}

oracle::Mat oracle_density(const StabilizerMixture& s) { return oracle::mixture(s.generators(), s.num_qubits()); }

}  // namespace

TEST(Lattice, IndexMapsAreBijective) {
  for (const auto& l : {LatticeSpec::ring(7), LatticeSpec::lieb_torus(2, 3), LatticeSpec::square_torus(3, 4)}) {
    std::set<std::tuple<int, std::size_t, std::size_t>> seen;
    for (std::size_t i = 0; i < l.num_sites(); ++i) {
      const auto c = l.coordinates(i);
      seen.insert({static_cast<int>(c.type), c.x, c.y});
      std::size_t back = 0;
      switch (c.type) {
        case LatticeSpec::SiteType::RingSite: back = l.ring_site(long(c.x)); break;
        case LatticeSpec::SiteType::Vertex: back = l.vertex(long(c.x), long(c.y)); break;
        case LatticeSpec::SiteType::HorizontalEdge: back = l.horizontal_edge(long(c.x), long(c.y)); break;
        case LatticeSpec::SiteType::VerticalEdge: back = l.vertical_edge(long(c.x), long(c.y)); break;
      }
      EXPECT_EQ(back, i);
    }
    EXPECT_EQ(seen.size(), l.num_sites());
  }
}

TEST(Lattice, LiebIncidenceIsConsistent) {
  const auto l = LatticeSpec::lieb_torus(3, 2);
  std::size_t incidences = 0;
  for (std::size_t v : l.vertices()) {
    for (std::size_t e : l.incident_edges(v)) {
      const auto ends = l.edge_endpoints(e);
      EXPECT_TRUE(ends[0] == v || ends[1] == v);
      ++incidences;
    }
  }
  EXPECT_EQ(incidences, 2 * l.edges().size());
  EXPECT_EQ(l.distance(l.vertex(0, 0), l.horizontal_edge(0, 0)), 1u);
  EXPECT_EQ(l.distance(l.vertex(0, 0), l.vertex(2, 0)), 2u);
}

TEST(Models, LsmDimerStatesAreBellCoverings) {
  const auto b = ring_model("lsm-dimer", 4);
  const auto& t = b.trivial_stabilizer();
  EXPECT_TRUE(t.contains(ops(4, {{0, 'X'}, {1, 'X'}})));
  EXPECT_TRUE(t.contains(ops(4, {{2, 'Z'}, {3, 'Z'}})));
  const auto& s = b.target_stabilizer();
  EXPECT_TRUE(s.contains(ops(4, {{1, 'X'}, {2, 'X'}})));
  EXPECT_TRUE(s.contains(ops(4, {{3, 'Z'}, {0, 'Z'}})));
  EXPECT_TRUE(b.clifford_entangler().is_permutation());
  // Dense oracle: the translation matrix maps the trivial density to the target density.
  const auto T = oracle::site_permutation(b.clifford_entangler().permutation()->image());
  EXPECT_LT((T * oracle_density(t) * T.adjoint() - oracle_density(s)).norm(), 1e-12);
}

TEST(Models, ClusterTargetHasClusterStabilizers) {
  const std::size_t n = 8;
  const auto b = ring_model("cluster-1d", n);
  for (std::size_t i = 0; i < n; ++i)
    EXPECT_TRUE(b.target_stabilizer().contains(ops(n, {{(i + n - 1) % n, 'Z'}, {i, 'X'}, {(i + 1) % n, 'Z'}})));
  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  for (std::size_t i = 0; i < n; ++i) bonds.push_back({i, (i + 1) % n});
  const auto diag = oracle::cz_diagonal(bonds, n);
  const oracle::Vec expect = diag / std::sqrt(double(1 << n));
  const auto got = b.target_dense().amplitudes();
  EXPECT_NEAR(std::abs(expect.dot(got)), 1.0, 1e-12);
}

TEST(Models, LiebEntanglerIsEveryIncidence) {
  const auto b = torus_model("lieb-2d", 2);
  EXPECT_EQ(b.num_sites(), 12u);
  std::set<std::pair<std::size_t, std::size_t>> gates;
  for (const auto& layer : b.clifford_entangler().circuit()->layers())
    for (const auto& g : layer) {
      EXPECT_EQ(g.kind(), GateKind::CZ);
      gates.insert({g.targets()[0], g.targets()[1]});
    }
  std::set<std::pair<std::size_t, std::size_t>> expect;
  for (std::size_t e : b.lattice.edges())
    for (std::size_t v : b.lattice.edge_endpoints(e)) expect.insert({v, e});
  EXPECT_EQ(gates, expect);
  EXPECT_EQ(gates.size(), 16u);
}

TEST(Models, SquareLinesAreSymmetriesOfTheCluster) {
  const auto b = torus_model("square-sspt", 3);
  EXPECT_EQ(b.symmetry.generators().size(), 6u);
  // Dense oracle at 9 qubits.
  const auto rho = oracle_density(b.target_stabilizer());
  for (const auto& g : b.symmetry.generators()) {
    const auto u = oracle::pauli(*g.pauli);
    EXPECT_LT((u * rho - rho).norm(), 1e-10) << g.name;
  }
}

TEST(Models, PermutationCircuitMatchesSitePermutation) {
  std::mt19937_64 rng(3);
  const std::vector<std::size_t> img{3, 0, 4, 1, 2};
  dense::Vector v(32);
  std::normal_distribution<double> nd;
  for (Eigen::Index i = 0; i < 32; ++i) v(i) = dense::Complex(nd(rng), nd(rng));
  auto a = dense::DenseState::from_amplitudes(2, 5, v / v.norm());
  auto b = a;
  a.permute_sites(img);
  b.apply(dense_circuit(Entangler(CliffordQca(SitePermutation(img)))));
  EXPECT_LT((a.amplitudes() - b.amplitudes()).norm(), 1e-12);
  const auto P = oracle::site_permutation(img);
  EXPECT_LT((P * v / v.norm() - a.amplitudes()).norm(), 1e-12);
}

TEST(Catalysts, StabilizerCatalystsPassDenseOracle) {
  struct Case {
    std::string model, catalyst;
  };
  const std::vector<Case> cases{{"lsm-dimer", "ghz"},          {"lsm-dimer", "long-range-bell"},
                                {"lsm-dimer", "group-average"}, {"cluster-1d", "ghz"},
                                {"cluster-1d", "ghz-one-sublattice"}, {"cluster-1d", "swssb"},
                                {"cluster-1d", "group-average"}};
  for (const auto& c : cases) {
    const auto b = ring_model(c.model, 8);
    const auto cat = build_catalyst(b, c.catalyst);
    const auto rho = oracle_density(cat.stabilizer());
    oracle::Mat U;
    if (c.model == "lsm-dimer") {
      U = oracle::site_permutation(b.clifford_entangler().permutation()->image());
    } else {
      std::vector<std::pair<std::size_t, std::size_t>> bonds;
      for (std::size_t i = 0; i < 8; ++i) bonds.push_back({i, (i + 1) % 8});
      U = oracle::cz_diagonal(bonds, 8).asDiagonal();
    }
    EXPECT_LT((U * rho * U.adjoint() - rho).norm(), 1e-10) << c.model << " " << c.catalyst;
    for (const auto& g : b.symmetry.generators())
      EXPECT_LT((oracle::pauli(*g.pauli) * rho - rho).norm(), 1e-10) << c.model << " " << c.catalyst;
  }
}

TEST(Catalysts, ClusterGhzIsTwoSublatticeGhz) {
  const auto b = ring_model("cluster-1d", 8);
  const auto cat = build_catalyst(b, "ghz");
  EXPECT_TRUE(cat.stabilizer().is_pure());
  EXPECT_TRUE(cat.stabilizer().contains(ops(8, {{0, 'Z'}, {6, 'Z'}})));
  EXPECT_TRUE(cat.stabilizer().contains(ops(8, {{1, 'Z'}, {7, 'Z'}})));
  EXPECT_FALSE(cat.stabilizer().group_sign(ops(8, {{0, 'Z'}, {1, 'Z'}})).has_value());
}

TEST(Catalysts, TwoDimensionalCatalysts) {
  const auto lieb = torus_model("lieb-2d", 2);
  const auto tc = build_catalyst(lieb, "toric-code");
  EXPECT_TRUE(tc.stabilizer().is_pure());
  for (std::size_t j = 1; j < lieb.symmetry.generators().size(); ++j)
    EXPECT_TRUE(tc.stabilizer().contains(*lieb.symmetry.generators()[j].pauli));
  for (std::size_t v : lieb.lattice.vertices()) {
    EXPECT_EQ(tc.stabilizer().expectation(PauliOperator::single(12, v, 'X')), 1);
    EXPECT_EQ(tc.stabilizer().expectation(PauliOperator::on_sites(12, lieb.lattice.incident_edges(v), 'Z')), 1);
  }
  EXPECT_TRUE(build_catalyst(lieb, "ghz-vertices").stabilizer().is_pure());
  const auto mixed = build_catalyst(lieb, "lieb-mixed");
  EXPECT_TRUE(mixed.is_mixed());
  EXPECT_EQ(mixed.stabilizer().rank(), 4u);  // U0 plus 4 - 1 independent plaquettes

  const auto sq = torus_model("square-sspt", 3);
  const auto pim = build_catalyst(sq, "pim-symmetric");
  for (std::size_t v = 0; v < 9; ++v)
    EXPECT_EQ(pim.stabilizer().expectation(PauliOperator::on_sites(9, sq.lattice.neighbours(v), 'Z')), 1);
  EXPECT_EQ(build_catalyst(sq, "group-average").stabilizer().rank(), 5u);
}

TEST(Catalysts, DenseCatalystsAreInvariant) {
  for (const std::string model : {"lsm-dimer", "cluster-1d"}) {
    const auto b = ring_model(model, 8);
    for (const std::string kind : {"superposition", "gapless"}) {
      const auto cat = build_catalyst(b, kind);
      ASSERT_EQ(cat.engine(), Engine::Dense);
      EXPECT_NEAR(cat.dense_state().norm(), 1.0, 1e-12);
      const oracle::Vec a = cat.dense_state().amplitudes();
      oracle::Mat U;
      if (model == "lsm-dimer") {
        U = oracle::site_permutation(b.clifford_entangler().permutation()->image());
      } else {
        std::vector<std::pair<std::size_t, std::size_t>> bonds;
        for (std::size_t i = 0; i < 8; ++i) bonds.push_back({i, (i + 1) % 8});
        U = oracle::cz_diagonal(bonds, 8).asDiagonal();
      }
      EXPECT_NEAR(std::abs(a.dot(U * a)), 1.0, 1e-10) << model << " " << kind;
    }
  }
}

TEST(Catalysts, LsmSuperpositionIsTranslationInvariantSum) {
  const auto b = ring_model("lsm-dimer", 8);
  const auto cat = build_catalyst(b, "superposition");
  const oracle::Vec t = b.trivial_dense().amplitudes();
  const oracle::Vec s = b.target_dense().amplitudes();
  const oracle::Vec expect = (t + s) / (t + s).norm();
  EXPECT_NEAR(std::abs(expect.dot(cat.dense_state().amplitudes())), 1.0, 1e-12);
}

TEST(Hamiltonians, ClusterSelfDualPointCommutesWithEntangler) {
  const std::size_t n = 8;
  const auto b = ring_model("cluster-1d", n);
  const auto h = build_hamiltonian(b, HamiltonianKind::parse("interpolated(1/2)")).to_matrix();
  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  for (std::size_t i = 0; i < n; ++i) bonds.push_back({i, (i + 1) % n});
  const oracle::Mat U = oracle::cz_diagonal(bonds, n).asDiagonal();
  EXPECT_LT((h * U - U * h).norm(), 1e-10);
  // Independent construction of -1/2 sum X - 1/2 sum ZXZ.
  oracle::Mat ref = oracle::Mat::Zero(1 << n, 1 << n);
  for (std::size_t i = 0; i < n; ++i) {
    ref -= 0.5 * oracle::pauli(PauliOperator::single(n, i, 'X'));
    ref -= 0.5 * oracle::pauli(ops(n, {{(i + n - 1) % n, 'Z'}, {i, 'X'}, {(i + 1) % n, 'Z'}}));
  }
  EXPECT_LT((h - ref).norm(), 1e-10);
}

TEST(Hamiltonians, LsmCatalystSumIsSelfDualChain) {
  const std::size_t n = 8;
  const auto b = ring_model("lsm-dimer", n);
  const auto h = build_hamiltonian(b, HamiltonianKind::parse("catalyst-sum")).to_matrix();
  oracle::Mat ref = oracle::Mat::Zero(1 << n, 1 << n);
  for (std::size_t i = 0; i < n; ++i) {
    ref -= oracle::pauli(ops(n, {{i, 'X'}, {(i + 1) % n, 'X'}}));
    ref -= oracle::pauli(ops(n, {{i, 'Z'}, {(i + 1) % n, 'Z'}}));
  }
  EXPECT_LT((h - ref).norm(), 1e-10);
  const auto T = oracle::site_permutation(b.clifford_entangler().permutation()->image());
  EXPECT_LT((T * h * T.adjoint() - h).norm(), 1e-10);
}

TEST(Hamiltonians, ClusterTrivialGroundStateIsPlus) {
  const auto b = ring_model("cluster-1d", 6);
  const auto gs = dense::ground_state(build_hamiltonian(b, HamiltonianKind::parse("triv")));
  ASSERT_EQ(gs.basis.size(), 1u);
  EXPECT_NEAR(gs.energy, -6.0, 1e-10);
  const oracle::Vec plus = oracle::Vec::Constant(64, 1.0 / 8.0);
  EXPECT_NEAR(std::abs(plus.dot(gs.basis.front())), 1.0, 1e-10);
}

TEST(Models, CocycleBundle) {
  ModelParams p;
  p.n = 4;
  p.group = {2, 2};
  const auto b = build_model("cocycle", p);
  EXPECT_EQ(b.site_dim(), 4u);
  EXPECT_TRUE(b.cocycle->degree() == 2);
  for (const std::string k : {"ghz", "superposition", "gapless"}) {
    const auto c = build_catalyst(b, k);
    EXPECT_TRUE(is_symmetric(b.symmetry, c.dense_state())) << k;
  }
  // Catalyst-sum is self-dual: commutes with the entangler on a random state.
  const auto h = build_hamiltonian(b, HamiltonianKind::parse("catalyst-sum"));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  dense::Vector v(256);
  for (Eigen::Index i = 0; i < 256; ++i) v(i) = dense::Complex(nd(rng), nd(rng));
  auto s = dense::DenseState::from_amplitudes(4, 4, v / v.norm());
  auto us = s;
  apply_entangler(b.entangler, us);
  const dense::Vector a = h.apply(us.amplitudes());
  const dense::Vector hv = h.apply(s.amplitudes());
  auto hs = dense::DenseState::from_amplitudes(4, 4, hv / hv.norm());
  apply_entangler(b.entangler, hs);
  EXPECT_LT((a - hv.norm() * hs.amplitudes()).norm(), 1e-10);
}

TEST(Models, RegistryErrors) {
  EXPECT_THROW(ring_model("nope", 8), RegistryError);
  EXPECT_THROW(ring_model("cluster-1d", 7), RegistryError);
  EXPECT_THROW(ring_model("lsm-dimer", 2), RegistryError);
  EXPECT_THROW(build_catalyst(ring_model("cluster-1d", 8), "toric-code"), RegistryError);
  ModelParams p;
  p.lx = 3;
  p.ly = 4;
  EXPECT_THROW(build_model("square-sspt", p), RegistryError);
  EXPECT_THROW(HamiltonianKind::parse("weird"), RegistryError);
}
