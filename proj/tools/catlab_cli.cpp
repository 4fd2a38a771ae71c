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

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "acceptance_suite.hpp"
#include "catlab/cohomology.hpp"
#include "catlab/protocols.hpp"
#include "catlab/report.hpp"

using namespace catlab;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string model = "cluster-1d";
  std::string catalyst;
  std::size_t n = 0, lx = 0, ly = 0;
  std::vector<int64_t> group;
  std::vector<int64_t> cls;
  uint64_t seed = 0;
  std::string engine = "auto";
  std::string out;
  std::string format = "json";
  std::size_t runs = 1000;
  std::size_t jobs = 1;
  std::string mode = "ancilla";
  bool unmake = false;
  bool records = false;
  std::vector<std::size_t> region_a, region_b;
  int generator = -1;
  std::size_t start = 0, length = 0, radius = 0;
  char op = 'Z';
  std::size_t degree = 2;
  int64_t modulus = 0;
  std::vector<int> only;
  std::vector<int> orders{2};
};

bool is_ring_model(const std::string& m) { return m == "lsm-dimer" || m == "cluster-1d" || m == "cocycle"; }

ModelParams params_of(const Options& o) {
  ModelParams p;
  p.n = o.n;
  p.lx = o.lx;
  p.ly = o.ly ? o.ly : o.lx;
  p.group = o.group;
  p.cohomology_class = o.cls;
  if (o.model == "cocycle") {
    if (p.group.empty()) p.group = {2, 2};
    if (!p.n) p.n = 3;
  } else if (is_ring_model(o.model)) {
    if (!p.n) p.n = 8;
  } else if (!p.lx && !p.n) {
    p.lx = p.ly = o.model == "lieb-2d" ? 2 : 3;
  }
  return p;
}

json model_config(const Options& o) {
  const auto p = params_of(o);
  json c = {{"model", o.model}};
  if (is_ring_model(o.model)) {
    c["n"] = p.n;
  } else {
    c["lx"] = p.lx ? p.lx : p.n;
    c["ly"] = p.ly ? p.ly : p.n;
  }
  if (o.model == "cocycle") {
    c["group"] = p.group;
    c["class"] = p.cohomology_class;
  }
  return c;
}

Engine resolve_engine(const Options& o, const ModelBundle& b, Catalyst& c) {
  if (o.engine == "auto") return c.engine();
  if (o.engine == "stabilizer") {
    if (c.engine() != Engine::Stabilizer)
      throw UsageError("catalyst '" + o.catalyst + "' of " + b.name + " needs the dense engine");
    return Engine::Stabilizer;
  }
  if (c.engine() == Engine::Stabilizer) {
    if (c.is_mixed()) throw UsageError("the dense engine handles pure catalysts only; '" + o.catalyst + "' is mixed");
    c.state = dense::state_of(c.stabilizer());
  }
  return Engine::Dense;
}

std::string element_label(const FiniteAbelianGroup& g, std::size_t index) {
  const auto e = g.element(index);
  std::string s = "(";
  for (std::size_t k = 0; k < e.size(); ++k) s += (k ? "," : "") + std::to_string(e[k]);
  return s + ")";
}

std::string dyadic(const DyadicValue& v) { return v.to_string(); }

// --------------------------------------------------------------------------

bool is_reference_state(const std::string& key) { return key == "target" || key == "trivial" || key == "plus"; }

StabilizerMixture stabilizer_state(const ModelBundle& b, const std::string& key, uint64_t seed) {
  if ((key.empty() || is_reference_state(key)) && !b.is_clifford())
    throw UsageError("reference states are defined for qubit models");
  if (key.empty() || key == "target") return b.target_stabilizer();
  if (key == "trivial") return b.trivial_stabilizer();
  if (key == "plus") return StabilizerMixture::plus(b.num_sites());
  const auto c = build_catalyst(b, key, seed);
  if (c.engine() != Engine::Stabilizer) throw UsageError("'" + key + "' is not a stabilizer state");
  return c.stabilizer();
}

ReportEnvelope cmd_catalyze(const Options& o) {
  if (o.catalyst.empty()) throw UsageError("--catalyst is required");
  const auto b = build_model(o.model, params_of(o));
  Catalyst c = is_reference_state(o.catalyst) ? Catalyst{o.catalyst, stabilizer_state(b, o.catalyst, o.seed)}
                                              : build_catalyst(b, o.catalyst, o.seed);
  const Engine e = resolve_engine(o, b, c);
  const auto r = verify_catalysis(b, c);
  json res = r.to_json();
  res.erase("wall_ms");
  if (!c.info.is_null()) res["catalyst_info"] = c.info;
  json cfg = model_config(o);
  cfg["catalyst"] = o.catalyst;
  cfg["engine"] = engine_name(e);
  cfg["seed"] = o.seed;
  std::ostringstream s;
  s << b.name << "/" << o.catalyst << ": " << (r.pass() ? "catalysis verified" : "catalysis check failed") << ", depth "
    << r.depth << ", " << r.gates_failing_audit << " of " << r.gates << " gates fail the audit, match " << r.match_kind;
  return make_report("catalyze", cfg, res, r.pass(), s.str());
}

std::pair<Interval, Interval> regions_of(const Options& o, std::size_t n) {
  auto [a, b] = default_regions(n);
  if (o.model == "lsm-dimer") {
    // Regions aligned to two-site unit cells.
    a = Interval{0, (n / 2) & ~std::size_t{1}};
    b = Interval{(n / 4) & ~std::size_t{1}, (n / 2) & ~std::size_t{1}};
  }
  if (!o.region_a.empty()) a = Interval{o.region_a[0], o.region_a[1]};
  if (!o.region_b.empty()) b = Interval{o.region_b[0], o.region_b[1]};
  return {a, b};
}

ReportEnvelope cmd_invariant(const Options& o) {
  if (!is_ring_model(o.model)) throw UsageError("invariant tables are defined for one-dimensional models");
  Options oo = o;
  if (!oo.n && o.model != "cocycle") oo.n = 12;
  const auto b = build_model(oo.model, params_of(oo));
  const std::size_t n = b.num_sites();
  const auto [ra, rb] = regions_of(oo, n);
  bool dense_engine = oo.engine == "dense" || !b.is_clifford();
  if (oo.engine == "stabilizer" && !b.is_clifford()) throw UsageError(b.name + " has no Clifford entangler");
  const auto t = dense_engine ? spt_invariant_dense(b.entangler, b.symmetry, ra, rb)
                              : spt_invariant(b.clifford_entangler(), b.symmetry, ra, rb);
  const auto& grp = b.symmetry.group();
  json rows = json::array();
  std::size_t minus = 0;
  for (std::size_t g = 0; g < t.group_order; ++g)
    for (std::size_t h = 0; h < t.group_order; ++h) {
      const auto c = t.at(g, h);
      if (std::abs(c + 1.0) < 1e-9) ++minus;
      json row = {{"g", element_label(grp, g)}, {"h", element_label(grp, h)}, {"re", c.real()}, {"im", c.imag()}};
      if (t.exact) row["i_power"] = t.i_powers[g * t.group_order + h];
      rows.push_back(row);
    }
  const bool bilinear = t.is_bilinear(grp);
  json res = t.to_json(grp);
  res["table"] = rows;
  res["bilinear"] = bilinear;
  res["trivial"] = t.all_trivial();
  res["minus_one_entries"] = minus;
  res["engine"] = dense_engine ? "dense" : "stabilizer";
  json cfg = model_config(oo);
  cfg["engine"] = dense_engine ? "dense" : "stabilizer";
  cfg["region_a"] = {ra.start, ra.length};
  cfg["region_b"] = {rb.start, rb.length};
  std::ostringstream s;
  s << b.name << " N=" << n << ": " << (t.all_trivial() ? "trivial" : "nontrivial") << " invariant, " << minus
    << " entries equal -1" << (bilinear ? "" : ", table is not bilinear");
  return make_report("invariant", cfg, res, bilinear, s.str());
}

ReportEnvelope cmd_localization(const Options& o) {
  if (o.model != "lsm-dimer" && o.model != "cluster-1d") throw UsageError("localization needs a qubit ring model");
  Options oo = o;
  if (!oo.n) oo.n = 12;
  const auto b = build_model(oo.model, params_of(oo));
  const std::size_t n = b.num_sites();
  const auto rho = stabilizer_state(b, oo.catalyst, oo.seed);
  const std::size_t ngen = b.symmetry.generators().size();
  if (oo.generator >= static_cast<int>(ngen)) throw UsageError("generator index out of range");

  struct Point {
    std::size_t g, start, length, radius;
  };
  std::vector<Point> points;
  std::vector<std::size_t> gens;
  for (std::size_t g = 0; g < ngen; ++g)
    if (oo.generator < 0 || static_cast<std::size_t>(oo.generator) == g) gens.push_back(g);
  if (oo.length) {
    const std::size_t r = oo.radius ? oo.radius : 1;
    for (auto g : gens) points.push_back({g, oo.start % n, oo.length, r});
  } else {
    for (auto g : gens)
      for (std::size_t len : {4u, 6u, 8u})
        for (std::size_t r = 1; r <= 3; ++r) {
          if (oo.radius && r != oo.radius) continue;
          if (len < 4 * r || len > n || n - len < 4 * r) continue;
          for (std::size_t s = 0; s < n; ++s) points.push_back({g, s, len, r});
        }
    if (points.empty()) throw UsageError("no (interval, radius) pair satisfies the size precondition at this N");
  }

  std::vector<json> rows(points.size());
  std::vector<char> verified(points.size(), 1), strong(points.size(), 0);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < points.size(); k += stride) {
      const auto& p = points[k];
      const Interval gamma{p.start, p.length};
      const auto ug = b.symmetry.truncated(p.g, gamma.sites(n));
      const auto sw = strong_localization(rho, b.symmetry, p.g, gamma, p.radius);
      const auto ww = weak_localization(rho, b.symmetry, p.g, gamma, p.radius);
      bool ok = true;
      if (sw) ok = ok && rho.group_sign(ug * sw->left * sw->right) == std::optional<int>(1);
      if (ww) ok = ok && rho.conjugated_by(ug * ww->left * ww->right).same_state(rho);
      verified[k] = ok;
      strong[k] = sw.has_value();
      rows[k] = {{"generator", b.symmetry.generators()[p.g].name},
                 {"start", p.start},
                 {"length", p.length},
                 {"radius", p.radius},
                 {"strong", sw.has_value()},
                 {"strong_left", sw ? sw->left.to_string() : ""},
                 {"strong_right", sw ? sw->right.to_string() : ""},
                 {"weak", ww.has_value()},
                 {"weak_trivial", ww ? ww->trivial() : false},
                 {"witness_verified", ok}};
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(oo.jobs, points.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(work, j, jobs);
  work(0, jobs);
  for (auto& t : pool) t.join();

  json obstructed = json::array();
  for (auto g : gens) {
    bool any = false;
    for (std::size_t k = 0; k < points.size(); ++k)
      if (points[k].g == g && strong[k]) any = true;
    if (!any) obstructed.push_back(b.symmetry.generators()[g].name);
  }
  const bool all_ok = std::all_of(verified.begin(), verified.end(), [](char c) { return c != 0; });
  json res = {{"table", rows}, {"points", points.size()}, {"obstructed_generators", obstructed},
              {"witnesses_verified", all_ok}};
  json cfg = model_config(oo);
  cfg["catalyst"] = oo.catalyst.empty() ? "target" : oo.catalyst;
  cfg["generator"] = oo.generator;
  if (oo.length) {
    cfg["start"] = oo.start % n;
    cfg["length"] = oo.length;
  }
  cfg["radius"] = oo.radius;
  std::ostringstream s;
  s << points.size() << " points; " << obstructed.size() << " of " << gens.size()
    << " generators admit no strong witness" << (all_ok ? "" : "; a witness failed verification");
  return make_report("localization", cfg, res, all_ok, s.str());
}

ReportEnvelope cmd_correlators(const Options& o) {
  const auto b = build_model(o.model, params_of(o));
  const std::size_t n = b.num_sites();
  if (b.site_dim() != 2) throw UsageError("correlators are defined for qubit models");
  std::string key = o.catalyst;
  if (key.empty()) key = b.has_catalyst("swssb") ? "swssb" : (b.has_catalyst("lieb-mixed") ? "lieb-mixed" : "target");
  std::vector<std::pair<std::string, std::pair<PauliOperator, PauliOperator>>> pairs;
  if (b.lattice.kind() == LatticeKind::Ring) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        pairs.push_back({std::string(1, o.op) + std::to_string(i) + " " + std::string(1, o.op) + std::to_string(j),
                         {PauliOperator::single(n, i, o.op), PauliOperator::single(n, j, o.op)}});
  } else {
    for (std::size_t j = 1; j < n; ++j)
      pairs.push_back({std::string(1, o.op) + "0 " + std::string(1, o.op) + std::to_string(j),
                       {PauliOperator::single(n, 0, o.op), PauliOperator::single(n, j, o.op)}});
  }
  const PauliOperator id(n);
  if (b.lattice.kind() == LatticeKind::LiebTorus) {
    const auto& L = b.lattice;
    std::vector<std::size_t> loop, path;
    for (std::size_t x = 0; x < L.lx(); ++x) loop.push_back(L.vertical_edge(long(x), 0));
    for (std::size_t x = 0; x + 1 < L.lx(); ++x) path.push_back(L.horizontal_edge(long(x), 0));
    if (path.empty()) path.push_back(L.horizontal_edge(0, 0));
    pairs.push_back({"dual-loop", {PauliOperator::on_sites(n, loop, 'Z'), id}});
    pairs.push_back({"open-string", {PauliOperator::on_sites(n, path, 'X'), id}});
  }
  json rows = json::array();
  bool consistent = true;
  Catalyst cat{key, StabilizerMixture(n, {})};
  if (is_reference_state(key))
    cat.state = stabilizer_state(b, key, o.seed);
  else
    cat = build_catalyst(b, key, o.seed);
  std::string engine = "stabilizer";
  if (cat.engine() == Engine::Stabilizer && o.engine != "dense") {
    const auto& rho = cat.stabilizer();
    for (const auto& [label, ops] : pairs) {
      const auto& [oi, oj] = ops;
      const auto f = fidelity_correlator(rho, oi, oj);
      const auto r2 = renyi_correlator(rho, oi, oj, 2);
      // Fidelity one and Renyi-2 one coincide for stabilizer mixtures.
      consistent = consistent && (f.is_one() == r2.is_one());
      json row = {{"label", label},
                  {"expectation", rho.expectation(oi * oj)},
                  {"fidelity", f.to_double()},
                  {"fidelity_exact", dyadic(f)}};
      for (int k : o.orders) {
        const auto rk = k == 2 ? r2 : renyi_correlator(rho, oi, oj, k);
        row["renyi" + std::to_string(k)] = rk.to_double();
        row["renyi" + std::to_string(k) + "_exact"] = dyadic(rk);
      }
      rows.push_back(std::move(row));
    }
  } else {
    if (o.engine == "stabilizer") throw UsageError("'" + key + "' needs the dense engine");
    engine = "dense";
    const dense::Matrix rho =
        cat.engine() == Engine::Dense ? dense::density_of(cat.dense_state()) : dense::density_of(cat.stabilizer());
    for (const auto& [label, ops] : pairs) {
      const auto& [oi, oj] = ops;
      const dense::Matrix mi = dense::pauli_matrix(oi), mj = dense::pauli_matrix(oj);
      const dense::Matrix p = mi * mj;
      const dense::Matrix sigma = p * rho * p.adjoint();
      json row = {{"label", label},
                  {"expectation", (rho * p).trace().real()},
                  {"fidelity", fidelity_correlator(rho, mi, mj)}};
      for (int k : o.orders) row["renyi" + std::to_string(k)] = dense::renyi_ratio(rho, sigma, k);
      rows.push_back(std::move(row));
    }
  }
  json cfg = model_config(o);
  cfg["catalyst"] = key;
  cfg["engine"] = engine;
  cfg["op"] = std::string(1, o.op);
  cfg["orders"] = o.orders;
  std::size_t long_range = 0;
  for (const auto& r : rows)
    if (std::abs(r["fidelity"].get<double>() - 1) < 1e-9 && std::abs(r["expectation"].get<double>()) < 1e-9) ++long_range;
  json res = {{"table", rows}, {"rows", rows.size()}, {"fidelity_one_expectation_zero", long_range}};
  std::ostringstream s;
  s << b.name << "/" << key << ": " << long_range << " of " << rows.size()
    << " operators have vanishing expectation and unit fidelity";
  return make_report("correlators", cfg, res, consistent, s.str());
}

ReportEnvelope cmd_measure(const Options& o) {
  const std::size_t n = o.n ? o.n : 8;
  const auto sw = measurement_sweep(n, o.runs, o.seed, o.jobs);
  json cfg = {{"n", n}, {"runs", o.runs}, {"seed", o.seed}};
  std::ostringstream s;
  s << o.runs << " runs at N=" << n << ": " << sw.failures() << " failures, chi-square p = " << sw.p_value;
  return make_report("measure-prep", cfg, sw.to_json(o.records), sw.pass(), s.str());
}

ReportEnvelope cmd_pipeline(const Options& o) {
  if (o.catalyst.empty()) throw UsageError("--catalyst is required");
  const auto b = build_model(o.model, params_of(o));
  const auto mode = parse_mode(o.mode);
  const auto s = catalyzed_pipeline(b, o.catalyst, mode, o.unmake);
  json cfg = model_config(o);
  cfg["catalyst"] = o.catalyst;
  cfg["mode"] = mode_name(mode);
  cfg["unmake"] = o.unmake;
  std::ostringstream m;
  m << b.name << "/" << o.catalyst << " " << mode_name(mode) << ": total depth " << s.total_depth() << ", "
    << s.long_range_gates() << " long-range gates" << (s.pass() ? "" : ", schedule check failed");
  return make_report("pipeline", cfg, s.to_json(), s.pass(), m.str());
}

ReportEnvelope cmd_cohomology(const Options& o) {
  const std::vector<int64_t> factors = o.group.empty() ? std::vector<int64_t>{2, 2} : o.group;
  for (auto f : factors)
    if (f < 2) throw UsageError("group factors must be at least 2");
  if (o.degree < 1 || o.degree > 3) throw UsageError("degree must be 1, 2 or 3");
  const FiniteAbelianGroup g(factors);
  const auto coeff = o.modulus ? Coefficients::zmod(o.modulus) : Coefficients::u1();
  const auto h = cohomology_group(g, o.degree, coeff);
  json reps = json::array();
  bool ok = true;
  for (const auto& rep : h.representatives) {
    json r = {{"cocycle", rep.to_json()}, {"is_cocycle", is_cocycle(rep)}};
    ok = ok && is_cocycle(rep);
    if (!o.modulus) {
      const auto nu = normalize_cocycle(rep);
      const bool norm = is_normalized(nu);
      ok = ok && norm;
      r["normalized"] = nu.to_json();
      r["normalized_ok"] = norm;
      r["class_order"] = class_order(rep);
    }
    reps.push_back(r);
  }
  json res = {{"factors", h.factors}, {"order", h.order()}, {"representatives", reps}};
  json cfg = {{"group", factors}, {"degree", o.degree}, {"coefficients", o.modulus ? "Z" + std::to_string(o.modulus) : "U(1)"}};
  std::ostringstream s;
  s << "H^" << o.degree << " has order " << h.order();
  if (!h.factors.empty()) {
    s << " =";
    for (std::size_t k = 0; k < h.factors.size(); ++k) s << (k ? " x" : "") << " Z" << h.factors[k];
  }
  return make_report("cohomology", cfg, res, ok, s.str());
}

ReportEnvelope cmd_selftest(const Options& o) {
  const auto results = acceptance::run(o.only);
  const bool ok = acceptance::print(results, std::cerr);
  json crit = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.pass;
    crit.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"checks", r.checks}, {"failures", r.failures},
                    {"notes", r.notes}});
  }
  json cfg = {{"only", o.only}};
  return make_report("selftest", cfg, {{"criteria", crit}}, ok,
                     std::to_string(passed) + " of " + std::to_string(results.size()) + " criteria passed");
}

void add_model_options(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model, "model key")->check(CLI::IsMember(model_keys()));
  sub->add_option("--n", o.n, "number of sites (rings), or torus side when --lx is absent");
  sub->add_option("--lx", o.lx, "torus width");
  sub->add_option("--ly", o.ly, "torus height (defaults to --lx)");
  sub->add_option("--group", o.group, "cocycle model: group factors")->delimiter(',');
  sub->add_option("--class", o.cls, "cocycle model: class coordinates")->delimiter(',');
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "output file (stdout when absent)");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catlab: catalysts for symmetry-protected topological phases"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Options o;

  auto* catalyze = app.add_subcommand("catalyze", "verify a catalyzed symmetric transformation");
  add_model_options(catalyze, o);
  catalyze->add_option("--catalyst", o.catalyst, "catalyst key");
  catalyze->add_option("--seed", o.seed, "seed for sampled recipes");
  catalyze->add_option("--engine", o.engine, "stabilizer, dense or auto")->check(CLI::IsMember({"stabilizer", "dense", "auto"}));

  auto* invariant = app.add_subcommand("invariant", "SPT invariant table of the entangler");
  add_model_options(invariant, o);
  invariant->add_option("--engine", o.engine, "stabilizer, dense or auto")->check(CLI::IsMember({"stabilizer", "dense", "auto"}));
  invariant->add_option("--region-a", o.region_a, "start and length of region A")->expected(2);
  invariant->add_option("--region-b", o.region_b, "start and length of region B")->expected(2);

  auto* localization = app.add_subcommand("localization", "strong and weak symmetry localization");
  add_model_options(localization, o);
  localization->add_option("--catalyst", o.catalyst, "catalyst key, or target / trivial / plus");
  localization->add_option("--seed", o.seed, "seed for sampled recipes");
  localization->add_option("--generator", o.generator, "generator index (all when absent)");
  localization->add_option("--start", o.start, "interval start");
  localization->add_option("--length", o.length, "interval length (sweep when absent)");
  localization->add_option("--radius", o.radius, "endpoint radius");
  localization->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* correlators = app.add_subcommand("correlators", "connected, fidelity and Renyi-2 correlators");
  add_model_options(correlators, o);
  correlators->add_option("--catalyst", o.catalyst, "catalyst key, or target / trivial / plus");
  correlators->add_option("--seed", o.seed, "seed for sampled recipes");
  correlators->add_option("--op", o.op, "single-site Pauli kind")->check(CLI::IsMember({'X', 'Y', 'Z'}));
  correlators->add_option("--order", o.orders, "Renyi orders, e.g. 2,3")->delimiter(',')->check(CLI::PositiveNumber);
  correlators->add_option("--engine", o.engine, "stabilizer, dense or auto")->check(CLI::IsMember({"stabilizer", "dense", "auto"}));

  auto* measure = app.add_subcommand("measure-prep", "measurement preparation of the cluster catalyst");
  measure->add_option("--n", o.n, "ring size");
  measure->add_option("--runs", o.runs, "number of seeded runs")->check(CLI::PositiveNumber);
  measure->add_option("--seed", o.seed, "root seed");
  measure->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  measure->add_flag("--records", o.records, "include every run in the report");

  auto* pipeline = app.add_subcommand("pipeline", "catalyzed preparation schedule");
  add_model_options(pipeline, o);
  pipeline->add_option("--catalyst", o.catalyst, "catalyst key");
  pipeline->add_option("--mode", o.mode, "ancilla or four-step")->check(CLI::IsMember({"ancilla", "four-step"}));
  pipeline->add_flag("--unmake", o.unmake, "undo the catalyst preparation afterwards");

  auto* cohomology = app.add_subcommand("cohomology", "group cohomology of a finite abelian group");
  cohomology->add_option("--group", o.group, "group factors, e.g. 2,2")->delimiter(',');
  cohomology->add_option("--degree", o.degree, "cohomology degree");
  cohomology->add_option("--modulus", o.modulus, "Z_M coefficients (U(1) when absent)")->check(CLI::NonNegativeNumber);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--only", o.only, "criteria to run")->delimiter(',');

  for (auto* sub : {catalyze, invariant, localization, correlators, measure, pipeline, cohomology, selftest})
    add_output_options(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    ReportEnvelope report;
    if (*catalyze) report = cmd_catalyze(o);
    else if (*invariant) report = cmd_invariant(o);
    else if (*localization) report = cmd_localization(o);
    else if (*correlators) report = cmd_correlators(o);
    else if (*measure) report = cmd_measure(o);
    else if (*pipeline) report = cmd_pipeline(o);
    else if (*cohomology) report = cmd_cohomology(o);
    else report = cmd_selftest(o);
    const std::string text = render(report, o.format);
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(o.out);
      if (!f) throw UsageError("cannot write " + o.out);
      f << text;
    }
    std::cerr << report.summary << "\n";
    return report.pass ? kExitPass : kExitFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return kExitFail;
  }
}
