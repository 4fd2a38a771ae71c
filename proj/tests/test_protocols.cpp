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

#include <set>

#include "catlab/protocols.hpp"
#include "oracle.hpp"

using namespace catlab;

namespace {

ModelBundle ring_model(const std::string& name, std::size_t n) {
  ModelParams p;
  p.n = n;
  return build_model(name, p);
}

}  // namespace

TEST(Seeds, DeterministicAndDistinct) {
  std::set<uint64_t> seen;
  for (uint64_t k = 0; k < 1000; ++k) seen.insert(derive_seed(42, k));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
  EXPECT_NE(derive_seed(42, 7), derive_seed(43, 7));
  uint64_t s = 0;
  EXPECT_EQ(splitmix64(s), 0xE220A8397B1DCDAFull);
}

TEST(CatalystCircuit, StaircaseBuildsGhzDensely) {
  const auto b = ring_model("cluster-1d", 8);
  const auto c = catalyst_circuit(b, "ghz-one-sublattice");
  EXPECT_EQ(c.circuit.depth(), 3u);
  auto s = dense::DenseState::product(2, 8, (dense::Vector(2) << 1, 1).finished() / std::sqrt(2.0));
  s.apply(dense::circuit_unitaries(c.circuit));
  // GHZ on the even sites, |+> on the odd ones.
  oracle::Vec ref = oracle::Vec::Zero(256);
  for (std::size_t x = 0; x < 256; ++x) {
    const std::size_t ev = x & 0x55;
    if (ev == 0 || ev == 0x55) ref(static_cast<Eigen::Index>(x)) = 1;
  }
  ref /= ref.norm();
  EXPECT_NEAR(std::abs(ref.dot(s.amplitudes())), 1.0, 1e-10);
}

TEST(Pipeline, ClusterGhzAncillaDepth) {
  const auto b = ring_model("cluster-1d", 8);
  const auto s = catalyzed_pipeline(b, "ghz", PipelineMode::Ancilla);
  EXPECT_TRUE(s.pass());
  EXPECT_TRUE(s.catalyst_restored);
  EXPECT_EQ(s.tau, 3u);
  EXPECT_EQ(s.total_depth(), s.tau + s.doubled_depth);
  EXPECT_EQ(s.total_depth(), (8u - 1) + 2);
  for (const auto& st : s.stages) EXPECT_TRUE(st.audit_pass) << st.name;
}

TEST(Pipeline, ClusterGhzAncillaLargerRing) {
  const auto b = ring_model("cluster-1d", 12);
  const auto s = catalyzed_pipeline(b, "ghz", PipelineMode::Ancilla, true);
  EXPECT_TRUE(s.pass());
  EXPECT_EQ(s.tau, 5u);
  EXPECT_EQ(s.total_depth(), 2 * s.tau + s.doubled_depth);
}

TEST(Pipeline, UnmakeRestoresTrivialAncilla) {
  const auto b = ring_model("cluster-1d", 8);
  const auto s = catalyzed_pipeline(b, "ghz-one-sublattice", PipelineMode::Ancilla, true);
  EXPECT_TRUE(s.pass());
  EXPECT_EQ(s.stages.size(), 3u);
}

TEST(Pipeline, LongRangeBellConstantDepth) {
  std::set<std::size_t> depths;
  for (std::size_t n : {4u, 8u, 12u}) {
    const auto b = ring_model("lsm-dimer", n);
    const auto s = catalyzed_pipeline(b, "long-range-bell", PipelineMode::Ancilla);
    EXPECT_TRUE(s.pass()) << n;
    EXPECT_TRUE(s.stages.front().long_range);
    EXPECT_EQ(s.stages.front().depth(), 1u);
    if (n >= 8) EXPECT_GT(s.long_range_gates(), 0u);
    depths.insert(s.total_depth());
  }
  EXPECT_EQ(depths.size(), 1u);
  EXPECT_EQ(*depths.begin(), 3u);
  EXPECT_THROW(catalyzed_pipeline(ring_model("lsm-dimer", 6), "long-range-bell", PipelineMode::Ancilla),
               NoCircuitRealization);
}

TEST(Pipeline, FourStep) {
  for (const std::string c : {"ghz", "ghz-one-sublattice"}) {
    const auto b = ring_model("cluster-1d", 8);
    const auto s = catalyzed_pipeline(b, c, PipelineMode::FourStep);
    EXPECT_TRUE(s.pass()) << c;
    EXPECT_EQ(s.num_qubits, 8u);
    EXPECT_EQ(s.total_depth(), s.stages[0].depth() + s.stages[1].depth());
  }
  const auto lsm = ring_model("lsm-dimer", 8);
  const auto s = catalyzed_pipeline(lsm, "long-range-bell", PipelineMode::FourStep);
  EXPECT_TRUE(s.pass());
  EXPECT_EQ(s.total_depth(), 2u);
}

TEST(Pipeline, LiebGhzVertices) {
  ModelParams p;
  p.lx = p.ly = 2;
  const auto b = build_model("lieb-2d", p);
  const auto s = catalyzed_pipeline(b, "ghz-vertices", PipelineMode::Ancilla);
  EXPECT_TRUE(s.pass());
  EXPECT_EQ(s.long_range_gates(), 0u);
}

TEST(Pipeline, IdentityEntanglerLeavesRegisterA) {
  auto b = ring_model("cluster-1d", 8);
  b.entangler = CliffordQca(CliffordCircuit(8));
  b.target = b.trivial;
  const auto s = catalyzed_pipeline(b, "ghz", PipelineMode::Ancilla);
  EXPECT_TRUE(s.final_matches_target);
}

TEST(Pipeline, ConsistentWithVerifier) {
  for (const auto& [model, cat] : std::vector<std::pair<std::string, std::string>>{
           {"cluster-1d", "ghz"}, {"cluster-1d", "ghz-one-sublattice"}, {"lsm-dimer", "long-range-bell"}}) {
    const auto b = ring_model(model, 8);
    const auto s = catalyzed_pipeline(b, cat, PipelineMode::Ancilla);
    ASSERT_TRUE(s.pass());
    EXPECT_TRUE(verify_catalysis(b, build_catalyst(b, cat)).pass()) << model << "/" << cat;
  }
}

TEST(Pipeline, RecipesWithoutCircuit) {
  const auto b = ring_model("cluster-1d", 8);
  EXPECT_THROW(catalyst_circuit(b, "gapless"), NoCircuitRealization);
  EXPECT_THROW(catalyst_circuit(b, "swssb"), NoCircuitRealization);
  EXPECT_THROW(catalyst_circuit(b, "nope"), RegistryError);
}

TEST(Audit, BareXUnderZSymmetryFails) {
  PreparationSchedule s;
  s.num_qubits = 4;
  Stage st;
  st.name = "bare X";
  CliffordCircuit c(4);
  c.add_layer({CliffordGate::named(GateKind::X, {1})});
  st.circuit = c;
  s.stages.push_back(st);
  const SymmetryRep zsym(FiniteAbelianGroup({2}), 2, 4,
                         {SymmetryGenerator{"Z", FormDegree::ZeroForm, 2, PauliOperator::on_sites(4, {0, 1, 2, 3}, 'Z'), {}}});
  EXPECT_FALSE(audit_schedule(s, zsym));
  EXPECT_TRUE(audit_schedule(measurement_schedule(8), ring_model("cluster-1d", 8).symmetry));
}

TEST(Measurement, AllPlusOutcomesGiveTwoGhz) {
  bool found = false;
  for (uint64_t seed = 0; seed < 2000 && !found; ++seed) {
    const auto r = measurement_prepare_catalyst(8, seed);
    if (std::all_of(r.outcomes.begin(), r.outcomes.end(), [](int s) { return s == 1; })) {
      found = true;
      const auto b = ring_model("cluster-1d", 8);
      EXPECT_TRUE(r.post_state.same_state(build_catalyst(b, "ghz").stabilizer()));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Measurement, SweepUniformAndInvariant) {
  const auto sw = measurement_sweep(8, 1000, 1);
  EXPECT_EQ(sw.failures(), 0u);
  EXPECT_EQ(sw.degrees_of_freedom, 63u);
  EXPECT_GT(sw.p_value, 1e-3);
  const auto b = ring_model("cluster-1d", 8);
  for (const auto& r : sw.records) {
    EXPECT_TRUE(r.post_state.contains(*b.symmetry.generators()[0].pauli));
    EXPECT_TRUE(r.post_state.contains(*b.symmetry.generators()[1].pauli));
  }
}

TEST(Measurement, JobsDoNotChangeResults) {
  const auto a = measurement_sweep(8, 64, 9, 1);
  const auto b = measurement_sweep(8, 64, 9, 3);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) EXPECT_EQ(a.records[k].outcomes, b.records[k].outcomes);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(Measurement, RejectsOddSizes) { EXPECT_THROW(measurement_prepare_catalyst(7, 0), std::invalid_argument); }
