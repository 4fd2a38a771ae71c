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

#include "catlab/protocols.hpp"

#include <algorithm>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

namespace catlab {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t root, uint64_t index) {
  uint64_t s = root;
  const uint64_t base = splitmix64(s);
  uint64_t t = base ^ (index * 0xD1B54A32D192ED03ull);
  return splitmix64(t);
}

std::string mode_name(PipelineMode m) { return m == PipelineMode::Ancilla ? "ancilla" : "four-step"; }

PipelineMode parse_mode(const std::string& text) {
  if (text == "ancilla") return PipelineMode::Ancilla;
  if (text == "four-step") return PipelineMode::FourStep;
  throw std::invalid_argument("unknown pipeline mode '" + text + "' (ancilla, four-step)");
}

nlohmann::json Stage::to_json() const {
  nlohmann::json j = {{"name", name},
                      {"kind", kind == Kind::Circuit ? "circuit" : "measurement"},
                      {"depth", depth()},
                      {"audit_pass", audit_pass},
                      {"long_range", long_range},
                      {"long_range_gates", long_range_gates}};
  if (kind == Kind::Circuit) {
    j["gates"] = circuit.gate_count();
    j["max_support"] = circuit.max_support();
  } else {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& p : measured) m.push_back(p.to_string());
    j["measured"] = std::move(m);
  }
  return j;
}

std::size_t PreparationSchedule::total_depth() const {
  std::size_t d = 0;
  for (const auto& s : stages) d += s.depth();
  return d;
}

std::size_t PreparationSchedule::long_range_gates() const {
  std::size_t c = 0;
  for (const auto& s : stages) c += s.long_range_gates;
  return c;
}

nlohmann::json PreparationSchedule::to_json() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : stages) st.push_back(s.to_json());
  return {{"model", model},
          {"catalyst", catalyst},
          {"mode", mode_name(mode)},
          {"num_qubits", num_qubits},
          {"tau", tau},
          {"doubled_depth", doubled_depth},
          {"total_depth", total_depth()},
          {"long_range_gates", long_range_gates()},
          {"final_matches_target", final_matches_target},
          {"catalyst_restored", catalyst_restored},
          {"audits_pass", audits_pass},
          {"pass", pass()},
          {"stages", std::move(st)}};
}

// ---------------------------------------------------------------- catalyst circuits

namespace {

/// Symmetric under X_a X_b; maps |+>|+> chains to GHZ chains.
CliffordGate staircase_gate(std::size_t a, std::size_t b) {
  return CliffordGate::tableau({a, b}, {PauliOperator::parse("-YY"), PauliOperator::parse("ZZ")},
                               {PauliOperator::parse("ZI"), PauliOperator::parse("ZX")});
}

CliffordCircuit staircase(std::size_t n, const std::vector<std::vector<std::size_t>>& chains) {
  CliffordCircuit c(n);
  std::size_t longest = 0;
  for (const auto& ch : chains) longest = std::max(longest, ch.size());
  for (std::size_t k = 0; k + 1 < longest; ++k) {
    GateLayer layer;
    for (const auto& ch : chains)
      if (k + 1 < ch.size()) layer.push_back(staircase_gate(ch[k], ch[k + 1]));
    c.add_layer(std::move(layer));
  }
  return c;
}

std::vector<std::size_t> stride(std::size_t n, std::size_t start, std::size_t step) {
  std::vector<std::size_t> v;
  for (std::size_t i = start; i < n; i += step) v.push_back(i);
  return v;
}

/// Local gate U g U^-1 on the support of the conjugated target algebra.
CliffordGate conjugated_gate(const CliffordQca& u, const CliffordGate& g) {
  const std::size_t n = u.num_qubits();
  SiteSet s;
  for (std::size_t t : g.targets())
    for (char k : {'X', 'Z'}) s = s.united(support(u.conjugate(PauliOperator::single(n, t, k))));
  std::vector<PauliOperator> xs, zs;
  auto image = [&](const PauliOperator& p) {
    const PauliOperator r = u.conjugate(g.conjugate(u.conjugate_inverse(p)));
    if (!(support(r).united(s) == s)) throw std::logic_error("conjugated gate leaves its support");
    return r.restricted(s);
  };
  for (std::size_t t : s) {
    xs.push_back(image(PauliOperator::single(n, t, 'X')));
    zs.push_back(image(PauliOperator::single(n, t, 'Z')));
  }
  return CliffordGate::tableau(s.sites(), std::move(xs), std::move(zs));
}

CliffordCircuit relabel(const CliffordCircuit& c, std::size_t offset, std::size_t total) {
  std::vector<std::size_t> map(c.num_qubits());
  for (std::size_t t = 0; t < map.size(); ++t) map[t] = offset + t;
  CliffordCircuit out(total);
  for (const auto& layer : c.layers()) {
    GateLayer l;
    for (const auto& g : layer) l.push_back(g.relabelled(map));
    out.add_layer(std::move(l));
  }
  return out;
}

/// Nearest-neighbour range of the lattice in its distance units.
std::size_t local_range(const LatticeSpec& l) { return l.kind() == LatticeKind::LiebTorus ? 2 : 1; }

std::size_t count_long_range(const CliffordCircuit& c, const LatticeSpec& lattice) {
  const std::size_t n = lattice.num_sites();
  std::size_t count = 0;
  for (const auto& layer : c.layers())
    for (const auto& g : layer) {
      std::size_t d = 0;
      for (std::size_t a : g.targets())
        for (std::size_t b : g.targets()) d = std::max(d, lattice.distance(a % n, b % n));
      if (d > local_range(lattice)) ++count;
    }
  return count;
}

Stage circuit_stage(std::string name, CliffordCircuit c, const SymmetryRep& sym, const LatticeSpec& lattice,
                    bool long_range) {
  Stage s;
  s.name = std::move(name);
  s.kind = Stage::Kind::Circuit;
  s.circuit = std::move(c);
  s.long_range = long_range;
  s.long_range_gates = count_long_range(s.circuit, lattice);
  s.audit_pass = true;
  for (const auto& layer : s.circuit.layers())
    for (const auto& g : layer)
      if (!audit_gate_symmetric(g, sym)) s.audit_pass = false;
  return s;
}

}  // namespace

CatalystCircuit catalyst_circuit(const ModelBundle& bundle, const std::string& catalyst) {
  if (!bundle.has_catalyst(catalyst)) throw RegistryError("unknown catalyst '" + catalyst + "' for " + bundle.name);
  const std::size_t n = bundle.num_sites();
  if (catalyst == "gapless")
    throw NoCircuitRealization("gapless catalysts have no circuit realization; prepare them with the ground-state "
                               "(dense eigensolve) demo instead");
  if (bundle.name == "cluster-1d" && catalyst == "ghz") return {staircase(n, {stride(n, 0, 2), stride(n, 1, 2)}), false};
  if (bundle.name == "cluster-1d" && catalyst == "ghz-one-sublattice") return {staircase(n, {stride(n, 0, 2)}), false};
  if (bundle.name == "lieb-2d" && catalyst == "ghz-vertices") {
    const auto& L = bundle.lattice;
    std::vector<std::size_t> snake;
    for (std::size_t y = 0; y < L.ly(); ++y)
      for (std::size_t k = 0; k < L.lx(); ++k) snake.push_back(L.vertex(long(y % 2 ? L.lx() - 1 - k : k), long(y)));
    return {staircase(n, {snake}), false};
  }
  if (bundle.name == "lsm-dimer" && catalyst == "long-range-bell") {
    if (n % 4) throw NoCircuitRealization("long-range Bell preparation needs n divisible by 4");
    GateLayer layer;
    for (std::size_t i = 0; i < n / 4; ++i) layer.push_back(CliffordGate::named(GateKind::SWAP, {2 * i + 1, 2 * i + n / 2}));
    CliffordCircuit c(n);
    c.add_layer(std::move(layer));
    return {std::move(c), true};
  }
  throw NoCircuitRealization("catalyst '" + catalyst + "' of " + bundle.name + " has no registered preparation circuit");
}

// ---------------------------------------------------------------- pipelines

PreparationSchedule catalyzed_pipeline(const ModelBundle& bundle, const std::string& catalyst, PipelineMode mode,
                                       bool unmake) {
  if (!bundle.is_clifford()) throw NoCircuitRealization("pipelines need a Clifford entangler");
  const std::size_t n = bundle.num_sites();
  const CatalystCircuit ca = catalyst_circuit(bundle, catalyst);
  const Catalyst reference = build_catalyst(bundle, catalyst);
  const StabilizerMixture& a = reference.stabilizer();
  const StabilizerMixture& triv = bundle.trivial_stabilizer();
  const CliffordQca& u = bundle.clifford_entangler();

  PreparationSchedule s;
  s.model = bundle.name;
  s.catalyst = catalyst;
  s.mode = mode;
  s.tau = ca.circuit.depth();
  if (mode == PipelineMode::Ancilla) {
    s.num_qubits = 2 * n;
    const SymmetryRep sym2 = bundle.symmetry.doubled();
    const auto doubled = build_doubled_fdqc(u, bundle.lattice);
    s.doubled_depth = doubled.depth();
    s.stages.push_back(circuit_stage("prepare catalyst on B", relabel(ca.circuit, n, 2 * n), sym2, bundle.lattice, ca.long_range));
    s.stages.push_back(circuit_stage("doubled circuit", doubled.circuit, sym2, bundle.lattice, false));
    if (unmake)
      s.stages.push_back(circuit_stage("unmake catalyst on B", relabel(ca.circuit.inverse(), n, 2 * n), sym2, bundle.lattice,
                                       ca.long_range));
    StabilizerMixture state = triv.tensor(triv).apply(s.stages[0].circuit);
    if (!state.same_state(triv.tensor(a))) throw std::logic_error("preparation circuit does not produce the catalyst");
    for (std::size_t k = 1; k < s.stages.size(); ++k) state = state.apply(s.stages[k].circuit);
    const auto& tgt = bundle.target_stabilizer();
    s.final_matches_target = state.same_state(tgt.tensor(unmake ? triv : a));
    s.catalyst_restored = s.final_matches_target;
  } else {
    s.num_qubits = n;
    CliffordCircuit middle(n);
    const CliffordCircuit undo = ca.circuit.inverse();
    for (const auto& layer : undo.layers())
      for (const auto& g : layer) middle.append_packed(conjugated_gate(u, g));
    s.stages.push_back(circuit_stage("prepare catalyst", ca.circuit, bundle.symmetry, bundle.lattice, ca.long_range));
    s.stages.push_back(circuit_stage("conjugated inverse preparation", std::move(middle), bundle.symmetry, bundle.lattice,
                                     ca.long_range));
    StabilizerMixture state = triv.apply(s.stages[0].circuit);
    if (!state.same_state(a)) throw std::logic_error("preparation circuit does not produce the catalyst");
    state = state.apply(s.stages[1].circuit);
    s.final_matches_target = state.same_state(bundle.target_stabilizer());
  }
  s.audits_pass = audit_schedule(s, mode == PipelineMode::Ancilla ? bundle.symmetry.doubled() : bundle.symmetry);
  return s;
}

bool audit_schedule(const PreparationSchedule& schedule, const SymmetryRep& symmetry) {
  for (const auto& st : schedule.stages) {
    if (st.kind == Stage::Kind::Circuit) {
      for (const auto& layer : st.circuit.layers())
        for (const auto& g : layer)
          if (!audit_gate_symmetric(g, symmetry)) return false;
    } else {
      for (const auto& p : st.measured)
        for (const auto& g : symmetry.generators())
          if (!g.pauli || !commutes(p, *g.pauli)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- measurement protocol

namespace {

PauliOperator zz(std::size_t n, std::size_t i) {
  PauliOperator p(n);
  p.set_kind(i, 'Z');
  p.set_kind((i + 2) % n, 'Z');
  return p;
}

void check_size(std::size_t n) {
  if (n < 4 || n % 2) throw std::invalid_argument("measurement protocol needs an even n >= 4");
}

MeasurementRecord run_once(std::size_t n, uint64_t seed, const ModelBundle& cluster, const DoubledCircuit& doubled) {
  MeasurementRecord r;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  StabilizerMixture rho = StabilizerMixture::plus(n);
  int even = 1, odd = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const int s = rho.measure(zz(n, i), rng).outcome;
    r.outcomes.push_back(s);
    (i % 2 ? odd : even) *= s;
  }
  r.even_parity = even == 1;
  r.odd_parity = odd == 1;
  r.invariant = rho.is_invariant(cluster.clifford_entangler());
  const auto& plus = cluster.trivial_stabilizer();
  r.catalyzes = plus.tensor(rho).apply(doubled.circuit).same_state(cluster.target_stabilizer().tensor(rho));
  r.post_state = std::move(rho);
  return r;
}

}  // namespace

nlohmann::json MeasurementRecord::to_json() const {
  return {{"seed", seed},          {"outcomes", outcomes},   {"even_parity", even_parity}, {"odd_parity", odd_parity},
          {"invariant", invariant}, {"catalyzes", catalyzes}, {"ok", ok()}};
}

PreparationSchedule measurement_schedule(std::size_t n) {
  check_size(n);
  PreparationSchedule s;
  s.model = "cluster-1d";
  s.catalyst = "swssb";
  s.num_qubits = n;
  Stage st;
  st.name = "measure Z_i Z_{i+2}";
  st.kind = Stage::Kind::Measurement;
  for (std::size_t i = 0; i < n; ++i) st.measured.push_back(zz(n, i));
  ModelParams p;
  p.n = n;
  const auto cluster = build_model("cluster-1d", p);
  st.audit_pass = true;
  for (const auto& m : st.measured)
    for (const auto& g : cluster.symmetry.generators())
      if (!commutes(m, *g.pauli)) st.audit_pass = false;
  s.stages.push_back(std::move(st));
  s.audits_pass = audit_schedule(s, cluster.symmetry);
  s.final_matches_target = true;
  return s;
}

MeasurementRecord measurement_prepare_catalyst(std::size_t n, uint64_t seed) {
  check_size(n);
  ModelParams p;
  p.n = n;
  const auto cluster = build_model("cluster-1d", p);
  return run_once(n, seed, cluster, build_doubled_fdqc(cluster.clifford_entangler(), cluster.lattice));
}

std::size_t MeasurementSweep::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.ok(); }));
}

nlohmann::json MeasurementSweep::to_json(bool include_records) const {
  nlohmann::json j = {{"n", n},
                      {"runs", records.size()},
                      {"root_seed", root_seed},
                      {"failures", failures()},
                      {"chi_square", chi_square},
                      {"degrees_of_freedom", degrees_of_freedom},
                      {"p_value", p_value},
                      {"pass", pass()}};
  if (include_records) {
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : records) rs.push_back(r.to_json());
    j["records"] = std::move(rs);
  }
  return j;
}

MeasurementSweep measurement_sweep(std::size_t n, std::size_t runs, uint64_t root_seed, std::size_t jobs) {
  check_size(n);
  if (runs == 0) throw std::invalid_argument("runs must be positive");
  ModelParams p;
  p.n = n;
  const auto cluster = build_model("cluster-1d", p);
  const auto doubled = build_doubled_fdqc(cluster.clifford_entangler(), cluster.lattice);
  MeasurementSweep sw;
  sw.n = n;
  sw.root_seed = root_seed;
  sw.records.resize(runs);
  jobs = std::max<std::size_t>(1, std::min(jobs, runs));
  auto work = [&](std::size_t first) {
    for (std::size_t k = first; k < runs; k += jobs) sw.records[k] = run_once(n, derive_seed(root_seed, k), cluster, doubled);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& t : pool) t.join();

  // The first n-2 outcomes are free; at most 12 of them enter the histogram.
  const std::size_t bits = std::min<std::size_t>(n - 2, 12);
  const std::size_t cells = std::size_t{1} << bits;
  std::vector<double> counts(cells, 0);
  for (const auto& r : sw.records) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < bits; ++i)
      if (r.outcomes[i] < 0) idx |= std::size_t{1} << i;
    counts[idx] += 1;
  }
  const double expected = static_cast<double>(runs) / static_cast<double>(cells);
  for (double c : counts) sw.chi_square += (c - expected) * (c - expected) / expected;
  sw.degrees_of_freedom = cells - 1;
  sw.p_value = boost::math::gamma_q(static_cast<double>(sw.degrees_of_freedom) / 2, sw.chi_square / 2);
  return sw;
}

}  // namespace catlab
