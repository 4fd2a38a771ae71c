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

#include "catlab/cohomology.hpp"
#include "catlab/dense.hpp"

using namespace catlab;

namespace {

Cochain random_cochain(const FiniteAbelianGroup& g, std::size_t d, int64_t den, std::mt19937_64& rng) {
  Cochain c(g, d, den);
  std::vector<int64_t> v(c.size());
  for (auto& x : v) x = static_cast<int64_t>(rng() % static_cast<uint64_t>(den));
  return Cochain(g, d, den, v);
}

// Homogeneous alternating sum evaluated directly from values.
int64_t direct_coboundary(const Cochain& c, const std::vector<std::size_t>& g) {
  int64_t s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::vector<std::size_t> omit;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i) omit.push_back(g[j]);
    s += (i % 2 ? -1 : 1) * c.value(omit);
  }
  return zmod::mod(s, c.denominator());
}

// |H^d(G, Z_m)| by enumerating every Z_m-valued invariant cochain.
std::size_t brute_force_order(const FiniteAbelianGroup& g, std::size_t d, int64_t m) {
  const std::size_t cd = Cochain(g, d, m).size(), cprev = Cochain(g, d - 1, m).size();
  auto decode = [&](uint64_t code, std::size_t len) {
    std::vector<int64_t> v(len);
    for (auto& x : v) {
      x = static_cast<int64_t>(code % static_cast<uint64_t>(m));
      code /= static_cast<uint64_t>(m);
    }
    return v;
  };
  uint64_t total = 1, total_prev = 1;
  for (std::size_t i = 0; i < cd; ++i) total *= static_cast<uint64_t>(m);
  for (std::size_t i = 0; i < cprev; ++i) total_prev *= static_cast<uint64_t>(m);
  std::size_t cocycles = 0;
  for (uint64_t code = 0; code < total; ++code)
    if (is_cocycle(Cochain(g, d, m, decode(code, cd)))) ++cocycles;
  std::set<std::vector<int64_t>> boundaries;
  for (uint64_t code = 0; code < total_prev; ++code)
    boundaries.insert(coboundary(Cochain(g, d - 1, m, decode(code, cprev))).rescaled(m).numerators());
  return cocycles / boundaries.size();
}

}  // namespace

TEST(Cochain, GroupIndexing) {
  FiniteAbelianGroup g({2, 3});
  EXPECT_EQ(g.order(), 6u);
  EXPECT_EQ(g.element(4), (std::vector<int64_t>{1, 1}));
  EXPECT_EQ(g.index({1, 2}), 5u);
  EXPECT_EQ(g.add(g.index({1, 2}), g.index({1, 2})), g.index({0, 1}));
  EXPECT_EQ(g.exponent(), 6);
}

TEST(Cochain, ZeroCoboundary) {
  FiniteAbelianGroup g({2});
  EXPECT_TRUE(coboundary(Cochain(g, 2, 2)).is_zero());
  EXPECT_TRUE(is_cocycle(Cochain(g, 2, 2)));
}

TEST(Cochain, CoboundaryMatchesAlternatingSum) {
  std::mt19937_64 rng(1);
  for (auto factors : {std::vector<int64_t>{2}, std::vector<int64_t>{3}, std::vector<int64_t>{2, 2}}) {
    FiniteAbelianGroup g(factors);
    for (std::size_t d = 1; d <= 2; ++d) {
      auto c = random_cochain(g, d, 6, rng);
      auto dc = coboundary(c).rescaled(6);
      std::vector<std::size_t> tuple(d + 2);
      for (std::size_t code = 0; code < dc.size() * g.order(); ++code) {
        std::size_t t = code;
        for (auto& x : tuple) {
          x = t % g.order();
          t /= g.order();
        }
        ASSERT_EQ(dc.value(tuple), direct_coboundary(c, tuple));
      }
    }
  }
}

TEST(Cochain, HomomorphismOfZ2IsClosed) {
  FiniteAbelianGroup g({2});
  Cochain lambda(g, 1, 2, {0, 1});
  EXPECT_EQ(lambda.value({1, 0}), 1);
  EXPECT_TRUE(is_cocycle(lambda));
  // Non-invariant-looking products are not closed: perturb one entry of a cocycle.
  auto nu = cluster_cocycle();
  auto nums = nu.numerators();
  nums[5] = 1 - nums[5];
  EXPECT_FALSE(is_cocycle(Cochain(nu.group(), 2, 2, nums)));
}

TEST(Cochain, CoboundarySquaredVanishes) {
  std::mt19937_64 rng(2);
  for (auto factors : {std::vector<int64_t>{2}, std::vector<int64_t>{3}, std::vector<int64_t>{2, 2}}) {
    FiniteAbelianGroup g(factors);
    for (int t = 0; t < 1000; ++t) {
      auto c = random_cochain(g, 1 + t % 2, 12, rng);
      ASSERT_TRUE(coboundary(coboundary(c)).is_zero());
    }
  }
}

TEST(Cohomology, Z2CoefficientsMatchEnumeration) {
  FiniteAbelianGroup z2({2});
  auto h = cohomology_group(z2, 2, Coefficients::zmod(2));
  EXPECT_EQ(h.factors, (std::vector<int64_t>{2}));
  EXPECT_EQ(brute_force_order(z2, 2, 2), 2u);
  FiniteAbelianGroup z3({3});
  EXPECT_EQ(cohomology_group(z3, 1, Coefficients::zmod(3)).order(), brute_force_order(z3, 1, 3));
  EXPECT_EQ(cohomology_group(z3, 2, Coefficients::zmod(3)).order(), brute_force_order(z3, 2, 3));
  FiniteAbelianGroup k({2, 2});
  EXPECT_EQ(cohomology_group(k, 1, Coefficients::zmod(2)).order(), brute_force_order(k, 1, 2));
  EXPECT_EQ(cohomology_group(k, 2, Coefficients::zmod(2)).order(), brute_force_order(k, 2, 2));
  FiniteAbelianGroup z4({4});
  EXPECT_EQ(cohomology_group(z4, 2, Coefficients::zmod(2)).order(), brute_force_order(z4, 2, 2));
}

TEST(Cohomology, ZmodRepresentativesAreCocycles) {
  FiniteAbelianGroup k({2, 2});
  auto h = cohomology_group(k, 2, Coefficients::zmod(2));
  for (const auto& r : h.representatives) EXPECT_TRUE(is_cocycle(r));
}

TEST(Cohomology, U1Groups) {
  EXPECT_TRUE(cohomology_group(FiniteAbelianGroup({2}), 2).factors.empty());
  EXPECT_EQ(cohomology_group(FiniteAbelianGroup({2, 2}), 2).factors, (std::vector<int64_t>{2}));
  EXPECT_EQ(cohomology_group(FiniteAbelianGroup({3}), 1).factors, (std::vector<int64_t>{3}));
  EXPECT_EQ(cohomology_group(FiniteAbelianGroup({2}), 3).factors, (std::vector<int64_t>{2}));
  EXPECT_EQ(cohomology_group(FiniteAbelianGroup({3, 3}), 2).factors, (std::vector<int64_t>{3}));
  EXPECT_EQ(cohomology_group(FiniteAbelianGroup({2, 4}), 2).factors, (std::vector<int64_t>{2}));
}

TEST(Cohomology, U1FirstCohomologyIsCharacters) {
  // Characters of Z2 x Z3 = Z6: enumerate homomorphisms directly.
  FiniteAbelianGroup g({2, 3});
  auto h = cohomology_group(g, 1);
  EXPECT_EQ(h.order(), 6u);
}

TEST(Cohomology, RepresentativesHaveUnitCoordinates) {
  for (auto factors : {std::vector<int64_t>{2, 2}, std::vector<int64_t>{3}, std::vector<int64_t>{2, 2, 2}}) {
    FiniteAbelianGroup g(factors);
    auto h = cohomology_group(g, factors.size() == 3 ? 2 : factors.size());
    for (std::size_t i = 0; i < h.representatives.size(); ++i) {
      auto coords = class_coordinates(h.representatives[i]);
      for (std::size_t j = 0; j < coords.size(); ++j) EXPECT_EQ(coords[j], i == j ? 1 : 0);
      EXPECT_EQ(class_order(h.representatives[i]), h.factors[i]);
    }
  }
}

TEST(Cohomology, CoboundariesAreTrivialClasses) {
  std::mt19937_64 rng(3);
  FiniteAbelianGroup g({2, 2});
  for (int t = 0; t < 20; ++t) {
    auto b = coboundary(random_cochain(g, 1, 4, rng));
    EXPECT_EQ(class_order(b), 1);
    auto pre = coboundary_preimage(b);
    ASSERT_TRUE(pre);
    EXPECT_EQ(coboundary(*pre), b);
  }
  EXPECT_FALSE(coboundary_preimage(cluster_cocycle()));
}

TEST(Normalize, ClusterCocycleIsAlreadyNormalized) {
  auto nu = cluster_cocycle();
  EXPECT_TRUE(is_cocycle(nu));
  EXPECT_EQ(class_order(nu), 2);
  EXPECT_TRUE(is_normalized(nu));
  EXPECT_EQ(normalize_cocycle(nu), nu);
}

TEST(Normalize, TrivialCocycle) {
  FiniteAbelianGroup g({2, 2});
  EXPECT_TRUE(normalize_cocycle(Cochain(g, 2, 1)).is_zero());
}

TEST(Normalize, ScrambledRepresentatives) {
  std::mt19937_64 rng(4);
  for (auto factors : {std::vector<int64_t>{2, 2}, std::vector<int64_t>{3, 3}, std::vector<int64_t>{2, 4}}) {
    FiniteAbelianGroup g(factors);
    auto h = cohomology_group(g, 2);
    ASSERT_FALSE(h.representatives.empty());
    for (int t = 0; t < 10; ++t) {
      // Same class, but shifted by a coboundary with large denominators.
      auto nu = h.representatives[0] + coboundary(random_cochain(g, 1, 35, rng));
      auto out = normalize_cocycle(nu);
      EXPECT_TRUE(is_normalized(out));
      const int64_t l = class_order(nu);
      EXPECT_TRUE(out.scaled(l).is_zero());
      for (std::size_t e = 0; e < g.order(); ++e) EXPECT_EQ(out.numerators()[out.table_index({e, e})], 0);
      EXPECT_TRUE(coboundary_preimage(out - nu).has_value());
    }
  }
}

TEST(Compile, TrivialCocycleGivesIdentity) {
  FiniteAbelianGroup g({2, 2});
  auto c = compile_cocycle_circuit(Cochain(g, 2, 1), 4);
  for (const auto& gate : c.gates)
    for (auto v : gate.diagonal) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-12);
}

TEST(Compile, DegreeMismatchThrows) {
  FiniteAbelianGroup g({2});
  EXPECT_THROW(compile_cocycle_circuit(Cochain(g, 3, 2), 4), std::invalid_argument);
}

TEST(Compile, ClusterClassSquaresToIdentityAndMatchesCluster) {
  const std::size_t n = 4;
  auto nu = normalize_cocycle(cluster_cocycle());
  auto circ = compile_cocycle_circuit(nu, n);
  for (const auto& gate : circ.gates)
    for (auto v : gate.diagonal) EXPECT_NEAR(std::abs(v * v - 1.0), 0.0, 1e-12);
  auto psi = dense::DenseState::product(4, n, dense::Vector::Constant(4, 0.5));
  for (const auto& gate : circ.gates) psi.apply_diagonal(gate.sites, gate.diagonal);
  // Cluster ring on qubits a0 b0 a1 b1 ...: amplitude (-1)^(sum a_i b_i + b_i a_(i+1)) / 16.
  double overlap_re = 0, overlap_im = 0;
  for (std::size_t idx = 0; idx < 256; ++idx) {
    int parity = 0;
    std::vector<int> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t digit = (idx >> (2 * i)) & 3;  // group index 2a + b
      a[i] = static_cast<int>(digit >> 1);
      b[i] = static_cast<int>(digit & 1);
    }
    for (std::size_t i = 0; i < n; ++i) parity += a[i] * b[i] + b[i] * a[(i + 1) % n];
    const double amp = (parity % 2 ? -1.0 : 1.0) / 16.0;
    overlap_re += amp * psi.amplitudes()(static_cast<Eigen::Index>(idx)).real();
    overlap_im += amp * psi.amplitudes()(static_cast<Eigen::Index>(idx)).imag();
  }
  EXPECT_GT(std::hypot(overlap_re, overlap_im), 1 - 1e-10);
}

TEST(Compile, CocycleStateIsSymmetric) {
  for (auto factors : {std::vector<int64_t>{2, 2}, std::vector<int64_t>{3, 3}}) {
    FiniteAbelianGroup g(factors);
    auto nu = normalize_cocycle(cohomology_group(g, 2).representatives[0]);
    const std::size_t n = 4, q = g.order();
    auto circ = compile_cocycle_circuit(nu, n);
    auto psi = dense::DenseState::product(q, n, dense::Vector::Constant(static_cast<Eigen::Index>(q), 1 / std::sqrt(double(q))));
    for (const auto& gate : circ.gates) psi.apply_diagonal(gate.sites, gate.diagonal);
    for (std::size_t h = 0; h < q; ++h) {
      dense::Matrix u = dense::Matrix::Zero(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
      for (std::size_t x = 0; x < q; ++x) u(static_cast<Eigen::Index>(g.add(h, x)), static_cast<Eigen::Index>(x)) = 1;
      auto moved = psi;
      for (std::size_t i = 0; i < n; ++i) moved.apply({{i}, u});
      EXPECT_GT(std::abs(moved.overlap(psi)), 1 - 1e-10);
    }
    // Fixes |g g ... g>.
    for (std::size_t x = 0; x < q; ++x) {
      auto s = dense::DenseState::basis(q, std::vector<std::size_t>(n, x));
      auto t = s;
      for (const auto& gate : circ.gates) t.apply_diagonal(gate.sites, gate.diagonal);
      EXPECT_NEAR(std::abs(t.overlap(s) - 1.0), 0.0, 1e-12);
    }
  }
}

TEST(Cochain, JsonShape) {
  auto j = cluster_cocycle().to_json();
  EXPECT_EQ(j["degree"], 2);
  EXPECT_EQ(j["entries"].size(), 16u);
  EXPECT_EQ(j["entries"][0]["tuple"].size(), 3u);
}
