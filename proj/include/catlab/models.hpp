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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "catlab/clifford.hpp"
#include "catlab/cohomology.hpp"
#include "catlab/dense.hpp"
#include "catlab/pauli.hpp"
#include "catlab/stabilizer.hpp"
#include "json.hpp"

namespace catlab {

/// Thrown for unknown registry keys, bad sizes, or kind/bundle mismatches.
class RegistryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class LatticeKind { Ring, LiebTorus, SquareTorus };

/// Periodic lattice with a flat qubit (or qudit) index.
///
/// Lieb layout: vertices first (x + lx*y), then horizontal edges
/// (x,y)-(x+1,y), then vertical edges (x,y)-(x,y+1), each block in the
/// same x + lx*y order.
class LatticeSpec {
 public:
  enum class SiteType { RingSite, Vertex, HorizontalEdge, VerticalEdge };
  struct Coordinates {
    SiteType type = SiteType::RingSite;
    std::size_t x = 0;
    std::size_t y = 0;
  };

  LatticeSpec() = default;
  static LatticeSpec ring(std::size_t n);
  static LatticeSpec lieb_torus(std::size_t lx, std::size_t ly);
  static LatticeSpec square_torus(std::size_t lx, std::size_t ly);

  LatticeKind kind() const { return kind_; }
  std::size_t lx() const { return lx_; }
  std::size_t ly() const { return ly_; }
  std::size_t num_sites() const;

  std::size_t ring_site(long i) const;
  std::size_t vertex(long x, long y) const;
  std::size_t horizontal_edge(long x, long y) const;
  std::size_t vertical_edge(long x, long y) const;
  /// Square-lattice vertex qubit.
  std::size_t site(long x, long y) const { return vertex(x, y); }

  Coordinates coordinates(std::size_t index) const;

  std::vector<std::size_t> vertices() const;
  std::vector<std::size_t> edges() const;
  std::array<std::size_t, 2> edge_endpoints(std::size_t edge) const;
  std::vector<std::size_t> incident_edges(std::size_t vertex) const;
  /// Boundary edges of the plaquette with lower-left corner (x, y).
  std::vector<std::size_t> plaquette(long x, long y) const;
  /// Nearest-neighbour vertices on the square torus.
  std::vector<std::size_t> neighbours(std::size_t vertex) const;

  /// Graph distance between two sites (ring distance, or torus Manhattan
  /// distance with edges sitting at half-integer positions, doubled).
  std::size_t distance(std::size_t a, std::size_t b) const;

  std::string describe() const;
  nlohmann::json to_json() const;

 private:
  LatticeKind kind_ = LatticeKind::Ring;
  std::size_t lx_ = 0;
  std::size_t ly_ = 1;
};

enum class FormDegree { ZeroForm, OneForm, Subsystem };
std::string form_name(FormDegree f);

struct SymmetryGenerator {
  std::string name;
  FormDegree form = FormDegree::ZeroForm;
  int order = 2;
  /// Qubit generators: a Pauli product of on-site operators.
  std::optional<PauliOperator> pauli;
  /// Qudit generators: local basis permutation |h> -> |shift[h]> on every site.
  std::vector<std::size_t> shift;
};

class SymmetryRep {
 public:
  SymmetryRep() = default;
  SymmetryRep(FiniteAbelianGroup group, std::size_t site_dim, std::size_t num_sites,
              std::vector<SymmetryGenerator> generators);

  const FiniteAbelianGroup& group() const { return group_; }
  std::size_t site_dim() const { return q_; }
  std::size_t num_sites() const { return n_; }
  const std::vector<SymmetryGenerator>& generators() const { return gens_; }
  bool is_pauli() const { return q_ == 2 && !gens_.empty() && gens_.front().pauli.has_value(); }

  /// Representation of the group element with the given index (qubit case),
  /// the product of generators weighted by the element's coordinates.
  PauliOperator pauli_element(std::size_t index) const;
  /// Generator restricted to the given sites, in the full register.
  PauliOperator truncated(std::size_t generator, const SiteSet& sites) const;

  /// U(g) (x) U(g) on a register of twice the size.
  SymmetryRep doubled() const;

  /// Dense action of generator j as a product of on-site operators.
  dense::DenseCircuit dense_generator(std::size_t j) const;

 private:
  FiniteAbelianGroup group_;
  std::size_t q_ = 2;
  std::size_t n_ = 0;
  std::vector<SymmetryGenerator> gens_;
};

/// SPT entangler: a Clifford QCA (qubit bundles) or a cocycle circuit (qudits).
using Entangler = std::variant<CliffordQca, CocycleCircuit>;

enum class Engine { Stabilizer, Dense };
std::string engine_name(Engine e);

/// A catalyst state handed to the verifier.
struct Catalyst {
  std::string name;
  std::variant<StabilizerMixture, dense::DenseState> state;
  /// Finite-size spectral data of Hamiltonian recipes; null otherwise.
  nlohmann::json info;
  Engine engine() const { return state.index() == 0 ? Engine::Stabilizer : Engine::Dense; }
  bool is_mixed() const;
  const StabilizerMixture& stabilizer() const { return std::get<StabilizerMixture>(state); }
  const dense::DenseState& dense_state() const { return std::get<dense::DenseState>(state); }
};

struct CatalystRecipe {
  std::string key;
  Engine engine = Engine::Stabilizer;
  std::string description;
};

struct ModelParams {
  std::size_t n = 0;
  std::size_t lx = 0;
  std::size_t ly = 0;
  /// Cocycle bundles: group factors and the index of the cohomology class
  /// (coordinates in the order of cohomology_group's factors).
  std::vector<int64_t> group;
  std::vector<int64_t> cohomology_class;
};

struct ModelBundle {
  std::string name;
  LatticeSpec lattice;
  SymmetryRep symmetry;
  Entangler entangler;
  /// Qubit bundles carry stabilizer trivial/target states; qudit bundles dense ones.
  std::variant<StabilizerMixture, dense::DenseState> trivial;
  std::variant<StabilizerMixture, dense::DenseState> target;
  std::vector<CatalystRecipe> catalysts;
  std::optional<Cochain> cocycle;

  std::size_t num_sites() const { return lattice.num_sites(); }
  std::size_t site_dim() const { return symmetry.site_dim(); }
  bool is_clifford() const { return entangler.index() == 0; }
  const CliffordQca& clifford_entangler() const { return std::get<CliffordQca>(entangler); }
  const CocycleCircuit& cocycle_entangler() const { return std::get<CocycleCircuit>(entangler); }
  const StabilizerMixture& trivial_stabilizer() const { return std::get<StabilizerMixture>(trivial); }
  const StabilizerMixture& target_stabilizer() const { return std::get<StabilizerMixture>(target); }
  dense::DenseState trivial_dense() const;
  dense::DenseState target_dense() const;
  bool has_catalyst(const std::string& key) const;
};

std::vector<std::string> model_keys();

ModelBundle build_model(const std::string& name, const ModelParams& params);

/// Builds a registry catalyst and checks symmetry and entangler invariance.
/// `seed` is used only by recipes that sample.
Catalyst build_catalyst(const ModelBundle& bundle, const std::string& kind, uint64_t seed = 0);

/// Sum of Pauli terms, all with real coefficients.
struct PauliSum {
  std::size_t num_qubits = 0;
  std::vector<std::pair<double, PauliOperator>> terms;
  PauliSum conjugated(const CliffordQca& u) const;
  /// Same multiset of terms up to ordering (coefficients compared to 1e-12).
  bool same_terms(const PauliSum& other) const;
  dense::Hamiltonian to_dense() const;
};

struct HamiltonianKind {
  enum class Type { Triv, Spt, Interpolated, CatalystSum } type = Type::Triv;
  double alpha = 0.5;
  static HamiltonianKind parse(const std::string& text);
};

dense::Hamiltonian build_hamiltonian(const ModelBundle& bundle, const HamiltonianKind& kind);
/// Pauli form for qubit bundles.
PauliSum build_pauli_hamiltonian(const ModelBundle& bundle, const HamiltonianKind& kind);

/// Entangler as dense gates; permutations become SWAP sequences.
dense::DenseCircuit dense_circuit(const Entangler& u);
/// Dense application of an entangler (or its inverse).
void apply_entangler(const Entangler& u, dense::DenseState& psi, bool inverse = false);
/// Dense symmetry check: U(g)|psi> proportional to |psi> for every generator.
bool is_symmetric(const SymmetryRep& sym, const dense::DenseState& psi, double tol = 1e-10);
/// Stabilizer strong symmetry: every generator lies in the signed group with sign +1.
bool is_strongly_symmetric(const SymmetryRep& sym, const StabilizerMixture& rho);
/// Whole-circuit symmetry of an entangler.
bool entangler_is_symmetric(const Entangler& u, const SymmetryRep& sym);

}  // namespace catlab
