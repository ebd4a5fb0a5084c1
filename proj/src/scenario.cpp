// Copyright 2026 The hamsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hamsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hamsim/bounds.hpp"
#include "hamsim/connector_opt.hpp"
#include "hamsim/detail/parallel.hpp"
#include "hamsim/dynamics.hpp"
#include "hamsim/errors.hpp"
#include "hamsim/models.hpp"
#include "hamsim/parent_ham.hpp"
#include "hamsim/shared_eigs.hpp"

namespace hamsim::scenario {

namespace {

struct KindName {
  Kind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {Kind::exact_commuting, "exact_commuting"}, {Kind::exact_noncommuting, "exact_noncommuting"},
    {Kind::shared_bound, "shared_bound"},       {Kind::diameter_min, "diameter_min"},
    {Kind::short_time, "short_time"},           {Kind::bounds_compare, "bounds_compare"},
    {Kind::fidelity_sweep, "fidelity_sweep"},   {Kind::parent_check, "parent_check"},
};

}  // namespace

std::string to_string(Kind k) {
  for (const auto& e : kKinds) {
    if (e.kind == k) return e.name;
  }
  return "unknown";
}

std::optional<Kind> kind_from_string(std::string_view text) {
  for (const auto& e : kKinds) {
    if (text == e.name) return e.kind;
  }
  return std::nullopt;
}

std::string kind_names() {
  std::string out;
  for (const auto& e : kKinds) {
    if (!out.empty()) out += ", ";
    out += e.name;
  }
  return out;
}

ToleranceProfile tolerance_profile(std::string_view name) {
  if (name == "default") return {"default", 1e-9, 1e-8, 1e-8, 1e-4, 1e-8, 1e-8};
  if (name == "strict") return {"strict", 1e-10, 1e-9, 1e-10, 1e-5, 1e-10, 1e-10};
  throw DomainError("unknown tolerance profile '" + std::string(name) +
                    "' (expected default or strict)");
}

// ---------------------------------------------------------------------------
// Builders shared by validation and execution

namespace {

double num_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw DomainError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::size_t count_or(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw DomainError(std::string("'") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::string str_or(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw DomainError(std::string("'") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

void check_sites(std::size_t n) {
  if (n == 0) throw DomainError("n_sites must be positive");
  if (n > kDefaultMaxDenseSites) {
    throw CapacityError("n_sites " + std::to_string(n) + " exceeds the dense limit of " +
                        std::to_string(kDefaultMaxDenseSites));
  }
}

void check_locality(std::size_t k, std::size_t n) {
  if (k == 0) throw DomainError("locality must be positive");
  if (k > n) throw DomainError("locality exceeds system size");
}

}  // namespace

PauliOperator build_operator(const json& spec, Rng& rng) {
  if (!spec.is_object()) throw DomainError("operator spec must be an object");
  if (spec.contains("sum")) {
    const auto& parts = spec.at("sum");
    if (!parts.is_array() || parts.empty()) throw DomainError("'sum' must be a nonempty array");
    PauliOperator total = build_operator(parts.front(), rng);
    for (std::size_t i = 1; i < parts.size(); ++i) total += build_operator(parts[i], rng);
    return total;
  }
  if (spec.contains("terms")) return io::operator_from_json(spec);
  const std::string model = str_or(spec, "model", "");
  const std::size_t n = count_or(spec, "n_sites", 0);
  check_sites(n);
  const auto conv = spin_convention_from_string(str_or(spec, "convention", "spin_half"));
  if (model == "three_spin_ring") {
    return three_spin_ring(n, num_or(spec, "j3", 1.0), num_or(spec, "hx", 1.0), conv);
  }
  if (model == "xyz_ring") {
    return xyz_ring(n, num_or(spec, "jx", 1.0), num_or(spec, "jy", 1.0), num_or(spec, "jz", 1.0),
                    conv);
  }
  if (model == "xxx_ring") return xxx_ring(n, num_or(spec, "j", 1.0), conv);
  if (model == "uniform_field") {
    return uniform_field(n, num_or(spec, "bx", 0.0), num_or(spec, "by", 0.0),
                         num_or(spec, "bz", 0.0), conv);
  }
  if (model == "z_chain") {
    const std::size_t k = count_or(spec, "k", 0);
    check_locality(k, n);
    std::optional<double> c_k;
    if (spec.contains("c_k")) c_k = num_or(spec, "c_k", 1.0);
    return build_z_chain_target(n, k, spec.value("periodic", true), c_k);
  }
  if (model == "random") {
    const std::size_t k = count_or(spec, "k", 0);
    check_locality(k, n);
    const double sigma = num_or(spec, "sigma", 1.0);
    if (!(sigma > 0.0)) throw DomainError("'sigma' must be positive");
    return random_local_operator(n, k, geometry_from_string(str_or(spec, "geometry", "all_subsets")),
                                 rng, sigma);
  }
  throw DomainError("unknown operator model '" + model +
                    "' (expected three_spin_ring, xyz_ring, xxx_ring, uniform_field, z_chain, "
                    "random, or a terms/sum spec)");
}

StateVector build_state(const json& spec, Rng& rng) {
  if (!spec.is_object()) throw DomainError("state spec must be an object");
  if (spec.value("haar", false)) {
    const std::size_t n = count_or(spec, "n_sites", 0);
    check_sites(n);
    return haar_state(n, rng);
  }
  if (spec.contains("preset")) check_sites(count_or(spec, "n_sites", 0));
  return io::state_from_json(spec);
}

std::vector<double> build_times(const json& spec) {
  std::vector<double> times;
  if (spec.is_array()) {
    for (const auto& v : spec) {
      if (!v.is_number()) throw DomainError("time grid entries must be numbers");
      times.push_back(v.get<double>());
    }
  } else if (spec.is_object()) {
    const double t_min = num_or(spec, "t_min", 0.0);
    const double t_max = num_or(spec, "t_max", 1.0);
    const std::size_t points = count_or(spec, "points", 50);
    if (points == 0) throw DomainError("time grid needs at least one point");
    for (std::size_t i = 0; i < points; ++i) {
      times.push_back(points == 1 ? t_min
                                  : t_min + (t_max - t_min) * static_cast<double>(i) /
                                                static_cast<double>(points - 1));
    }
  } else {
    throw DomainError("time grid must be an array or {t_min, t_max, points}");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw DomainError("time grid contains a non-finite time");
    if (times[i] < 0.0) throw DomainError("time grid contains a negative time");
    if (i > 0 && times[i] < times[i - 1]) throw DomainError("time grid must be ascending");
  }
  return times;
}

// ---------------------------------------------------------------------------
// Parameter records

namespace {

/// Records every problem instead of stopping at the first one.
class Diagnostics {
 public:
  template <typename F>
  void guard(const std::string& where, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      add(where.empty() ? e.what() : where + ": " + e.what());
    }
  }
  void add(std::string msg) { msgs_.push_back(std::move(msg)); }
  bool ok() const { return msgs_.empty(); }
  std::vector<std::string> take() { return std::move(msgs_); }

 private:
  std::vector<std::string> msgs_;
};

struct ToyParams {
  std::size_t n = 4;
  double j3 = 1.0;
  double hx = 1.0;
  SpinConvention conv = SpinConvention::spin_half;
  std::vector<double> field{-4.0, 0.0, 1.0};  // in units of j3
  std::vector<double> times;
  std::size_t states_per_set = 1;
  // Optional nullity scan, one axis per field component.
  std::vector<std::vector<double>> search;
};

struct SharedBoundParams {
  std::size_t n = 3;
  std::size_t samples = 200;
  std::size_t locality = 3;
  Geometry geometry = Geometry::all_subsets;
  std::size_t saturation_max_n = 5;
};

struct DiameterParams {
  std::size_t n = 5;
  std::size_t k_prime = 2;
  Geometry geometry = Geometry::chain_periodic;
  double beta = 0.01;
  BetaConvention convention = BetaConvention::coefficient;
  FloorMode floor = FloorMode::all_kprime;
  std::vector<std::size_t> ks{3, 4, 5};
  bool periodic = true;
  std::size_t max_iterations = 5000;
  std::size_t restarts = 5;
};

struct ShortTimeParams {
  std::size_t n = 3;
  json target = {{"model", "random"}, {"n_sites", 3}, {"k", 3}};
  std::size_t k_prime = 2;
  Geometry geometry = Geometry::chain_periodic;
  std::vector<StatePreset> presets{StatePreset::w, StatePreset::ghz, StatePreset::zero,
                                   StatePreset::cosdit};
  std::vector<double> times;
};

struct PairParams {
  json target;
  json simulator;
  json state;
  std::vector<double> times;
  NormChoice norm = NormChoice::spectral;
  double worst_case_t_max = 0.0;
};

struct ParentParams {
  json state = {{"preset", "ghz"}, {"n_sites", 3}};
  std::size_t k = 2;
  std::size_t k_prime = 1;
  Geometry geometry = Geometry::chain_periodic;
  std::vector<std::string> k_block;
  std::vector<std::string> kprime_block;
};

bool spec_is_random(const json& j) {
  if (j.is_object()) {
    if (j.value("model", std::string()) == "random" || j.value("haar", false)) return true;
    for (const auto& [key, v] : j.items()) {
      if (spec_is_random(v)) return true;
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (spec_is_random(v)) return true;
    }
  }
  return false;
}

bool needs_seed(Kind kind, const json& params) {
  switch (kind) {
    case Kind::exact_commuting:
    case Kind::exact_noncommuting:
    case Kind::shared_bound:
    case Kind::diameter_min:
      return true;
    default:
      return spec_is_random(params);
  }
}

/// Dry build of an operator spec so validation sees model errors.
std::size_t check_operator(const json& spec, Diagnostics& d, const std::string& where) {
  std::size_t n = 0;
  d.guard(where, [&] {
    Rng rng = make_rng(0);
    n = build_operator(spec, rng).n_sites();
  });
  return n;
}

std::size_t check_state(const json& spec, Diagnostics& d, const std::string& where) {
  std::size_t n = 0;
  d.guard(where, [&] {
    Rng rng = make_rng(0);
    const std::size_t dim = build_state(spec, rng).dimension();
    while ((std::size_t{1} << n) < dim) ++n;
  });
  return n;
}

ToyParams parse_toy(const json& p, bool noncommuting, Diagnostics& d) {
  ToyParams t;
  d.guard("", [&] { t.n = count_or(p, "n_sites", 4); check_sites(t.n); });
  d.guard("", [&] { t.j3 = num_or(p, "j3", 1.0); });
  d.guard("", [&] { t.hx = num_or(p, "hx", 1.0); });
  d.guard("", [&] { t.conv = spin_convention_from_string(str_or(p, "convention", "spin_half")); });
  d.guard("", [&] { t.states_per_set = count_or(p, "states_per_set", 1); });
  d.guard("times", [&] { t.times = build_times(p.value("times", json{{"t_max", 10.0}, {"points", 50}})); });
  if (noncommuting && p.contains("field")) {
    d.guard("field", [&] {
      const auto& f = p.at("field");
      if (!f.is_array() || f.size() != 3) throw DomainError("expected [bx, by, bz] in units of j3");
      t.field = f.get<std::vector<double>>();
    });
  }
  if (noncommuting && p.contains("field_search")) {
    d.guard("field_search", [&] {
      const auto& g = p.at("field_search");
      if (!g.is_object()) throw DomainError("expected {bx: [...], by: [...], bz: [...]}");
      std::size_t points = 1;
      for (const char* axis : {"bx", "by", "bz"}) {
        std::vector<double> values{0.0};
        if (g.contains(axis)) {
          const auto& v = g.at(axis);
          if (!v.is_array() || v.empty()) throw DomainError(std::string("'") + axis + "' must be a nonempty array");
          values = v.get<std::vector<double>>();
        }
        points *= values.size();
        t.search.push_back(std::move(values));
      }
      if (points > 4096) throw CapacityError("field_search grid exceeds 4096 points");
    });
  }
  return t;
}

SharedBoundParams parse_shared_bound(const json& p, Diagnostics& d) {
  SharedBoundParams s;
  d.guard("", [&] { s.n = count_or(p, "n_sites", 3); check_sites(s.n); });
  d.guard("", [&] { s.samples = count_or(p, "samples", 200); });
  d.guard("", [&] { s.locality = count_or(p, "locality", s.n); check_locality(s.locality, s.n); });
  d.guard("", [&] { s.geometry = geometry_from_string(str_or(p, "geometry", "all_subsets")); });
  d.guard("", [&] {
    s.saturation_max_n = count_or(p, "saturation_max_n", 5);
    if (s.saturation_max_n > kDefaultMaxDenseSites) throw CapacityError("saturation_max_n exceeds the dense limit");
  });
  return s;
}

DiameterParams parse_diameter(const json& p, Diagnostics& d) {
  DiameterParams s;
  d.guard("", [&] { s.n = count_or(p, "n_sites", 5); check_sites(s.n); });
  d.guard("", [&] { s.k_prime = count_or(p, "k_prime", 2); check_locality(s.k_prime, s.n); });
  d.guard("", [&] { s.geometry = geometry_from_string(str_or(p, "geometry", "chain_periodic")); });
  d.guard("", [&] {
    s.beta = num_or(p, "beta", 0.01);
    if (!(s.beta >= 0.0)) throw DomainError("beta must be nonnegative");
  });
  d.guard("", [&] { s.convention = beta_convention_from_string(str_or(p, "beta_convention", "coefficient")); });
  d.guard("", [&] { s.floor = floor_mode_from_string(str_or(p, "floor", "all_kprime")); });
  d.guard("", [&] { s.periodic = p.value("periodic", true); });
  d.guard("", [&] { s.max_iterations = count_or(p, "max_iterations", 5000); });
  d.guard("", [&] {
    s.restarts = count_or(p, "restarts", 5);
    if (s.restarts == 0) throw DomainError("restarts must be positive");
  });
  d.guard("targets", [&] {
    if (!p.contains("target_k")) return;
    const auto& ks = p.at("target_k");
    if (!ks.is_array() || ks.empty()) throw DomainError("'target_k' must be a nonempty array");
    s.ks.clear();
    for (const auto& k : ks) {
      if (!k.is_number_integer()) throw DomainError("'target_k' entries must be integers");
      s.ks.push_back(k.get<std::size_t>());
    }
  });
  for (std::size_t k : s.ks) d.guard("target_k", [&] { check_locality(k, s.n); });
  return s;
}

ShortTimeParams parse_short_time(const json& p, Diagnostics& d) {
  ShortTimeParams s;
  d.guard("", [&] { s.n = count_or(p, "n_sites", 3); check_sites(s.n); });
  if (p.contains("target")) {
    s.target = p.at("target");
  } else {
    s.target["n_sites"] = s.n;
    s.target["k"] = s.n;
  }
  const std::size_t tn = check_operator(s.target, d, "target");
  if (tn != 0 && tn != s.n) d.add("target: operator has " + std::to_string(tn) + " sites, expected " + std::to_string(s.n));
  d.guard("", [&] { s.k_prime = count_or(p, "k_prime", 2); check_locality(s.k_prime, s.n); });
  d.guard("", [&] { s.geometry = geometry_from_string(str_or(p, "geometry", "chain_periodic")); });
  d.guard("states", [&] {
    if (!p.contains("states")) return;
    s.presets.clear();
    for (const auto& v : p.at("states")) s.presets.push_back(state_preset_from_string(v.get<std::string>()));
  });
  d.guard("times", [&] { s.times = build_times(p.value("times", json{{"t_max", 0.1}, {"points", 11}})); });
  return s;
}

PairParams parse_pair(const json& p, bool with_state, Diagnostics& d) {
  PairParams s;
  for (const char* key : {"target", "simulator"}) {
    if (!p.contains(key)) d.add(std::string("missing '") + key + "' operator spec");
  }
  s.target = p.value("target", json::object());
  s.simulator = p.value("simulator", json::object());
  const std::size_t nt = p.contains("target") ? check_operator(s.target, d, "target") : 0;
  const std::size_t nq = p.contains("simulator") ? check_operator(s.simulator, d, "simulator") : 0;
  if (nt != 0 && nq != 0 && nt != nq) d.add("target and simulator act on different numbers of sites");
  if (with_state) {
    if (!p.contains("state")) d.add("missing 'state' spec");
    s.state = p.value("state", json::object());
    const std::size_t ns = p.contains("state") ? check_state(s.state, d, "state") : 0;
    if (ns != 0 && nt != 0 && ns != nt) d.add("state dimension does not match the Hamiltonians");
  }
  d.guard("times", [&] { s.times = build_times(p.value("times", json{{"t_max", 1.0}, {"points", 51}})); });
  d.guard("", [&] { s.norm = norm_choice_from_string(str_or(p, "norm", "spectral")); });
  d.guard("", [&] {
    s.worst_case_t_max = num_or(p, "worst_case_t_max", 0.0);
    if (s.worst_case_t_max < 0.0) throw DomainError("worst_case_t_max must be nonnegative");
  });
  return s;
}

ParentParams parse_parent(const json& p, Diagnostics& d) {
  ParentParams s;
  if (p.contains("state")) s.state = p.at("state");
  const std::size_t n = check_state(s.state, d, "state");
  d.guard("", [&] { s.geometry = geometry_from_string(str_or(p, "geometry", "chain_periodic")); });
  d.guard("", [&] {
    s.k = count_or(p, "k", 2);
    s.k_prime = count_or(p, "k_prime", 1);
    if (n != 0) check_locality(s.k, n);
    if (s.k_prime == 0 || s.k_prime >= s.k) throw DomainError("k_prime must satisfy 1 <= k_prime < k");
  });
  d.guard("blocks", [&] {
    if (p.contains("k_block") != p.contains("kprime_block")) {
      throw DomainError("give both k_block and kprime_block or neither");
    }
    if (!p.contains("k_block")) return;
    s.k_block = p.at("k_block").get<std::vector<std::string>>();
    s.kprime_block = p.at("kprime_block").get<std::vector<std::string>>();
    for (const auto* block : {&s.k_block, &s.kprime_block}) {
      for (const auto& text : *block) {
        const auto str = PauliString::parse(text);
        if (n != 0 && str.n_sites() != n) throw DimensionError("generator " + text + " has the wrong length");
      }
    }
    if (s.kprime_block.size() > kMaxMinorDimension) throw CapacityError("kprime_block holds more than 8 generators");
  });
  return s;
}

struct Parsed {
  Kind kind = Kind::exact_commuting;
  json params;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> diagnostics;
};

Parsed parse(const json& scenario, bool seed_supplied) {
  Parsed out;
  Diagnostics d;
  if (!scenario.is_object()) {
    out.diagnostics.push_back("scenario must be a JSON object");
    return out;
  }
  if (!scenario.contains("kind") || !scenario.at("kind").is_string()) {
    out.diagnostics.push_back("missing 'kind'; valid kinds: " + kind_names());
    return out;
  }
  const auto kind = kind_from_string(scenario.at("kind").get<std::string>());
  if (!kind) {
    out.diagnostics.push_back("unknown kind '" + scenario.at("kind").get<std::string>() +
                              "'; valid kinds: " + kind_names());
    return out;
  }
  out.kind = *kind;
  out.params = scenario.value("params", json::object());
  if (!out.params.is_object()) d.add("'params' must be an object");
  if (scenario.contains("seed")) {
    const auto& s = scenario.at("seed");
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<long long>() < 0)) {
      d.add("'seed' must be a nonnegative integer");
    } else {
      out.seed = s.get<std::uint64_t>();
    }
  }
  if (!out.params.is_object()) {
    out.diagnostics = d.take();
    return out;
  }
  if (needs_seed(out.kind, out.params) && !out.seed && !seed_supplied) {
    d.add("this scenario is randomized and needs a 'seed'");
  }
  switch (out.kind) {
    case Kind::exact_commuting: parse_toy(out.params, false, d); break;
    case Kind::exact_noncommuting: parse_toy(out.params, true, d); break;
    case Kind::shared_bound: parse_shared_bound(out.params, d); break;
    case Kind::diameter_min: parse_diameter(out.params, d); break;
    case Kind::short_time: parse_short_time(out.params, d); break;
    case Kind::bounds_compare: parse_pair(out.params, false, d); break;
    case Kind::fidelity_sweep: parse_pair(out.params, true, d); break;
    case Kind::parent_check: parse_parent(out.params, d); break;
  }
  out.diagnostics = d.take();
  return out;
}

// ---------------------------------------------------------------------------
// Execution

struct Context {
  const json& params;
  Rng rng;
  ToleranceProfile tol;
  const RunOptions& opts;
  json report = json::object();
  RunResult result;

  void write(const std::string& name, const std::string& text) {
    io::write_text(opts.out_dir / name, text);
    result.files.push_back(name);
  }
  SharedOptions shared() const {
    SharedOptions s;
    s.kernel_tol = tol.kernel_tol;
    s.residual_tol = tol.residual_tol;
    return s;
  }
};

std::string fmt(double v) { return io::format_double(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

CVector random_combination(const CMatrix& basis, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector coeffs(basis.cols());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    coeffs(i) = Complex(re, im);
  }
  CVector v = basis * coeffs;
  return v / v.norm();
}

/// Sweeps random states from each set and appends rows to `table`; returns max |1 - F|.
double sweep_sets(Context& ctx, const PauliOperator& h_t, const PauliOperator& h_qs,
                  const std::vector<SimulatableSet>& sets, std::size_t crossing,
                  std::size_t states_per_set, const std::vector<double>& times,
                  io::CsvTable& table) {
  const PairEvolution pair(h_t, h_qs);
  double worst = 0.0;
  for (std::size_t si = 0; si < sets.size(); ++si) {
    for (std::size_t s = 0; s < states_per_set; ++s) {
      const StateVector psi = StateVector::normalized(random_combination(sets[si].basis, ctx.rng));
      std::vector<double> fid(times.size());
      detail::parallel_for(times.size(), ctx.opts.threads,
                           [&](std::size_t i) { fid[i] = pair.fidelity(psi, times[i]); });
      for (std::size_t i = 0; i < times.size(); ++i) {
        worst = std::max(worst, std::abs(1.0 - fid[i]));
        table.row({fmt(crossing), fmt(si), fmt(s), fmt(times[i]), fmt(fid[i])});
      }
    }
  }
  return worst;
}

json crossing_json(const Crossing& c, const std::vector<SimulatableSet>& sets) {
  json js = json::array();
  for (const auto& s : sets) {
    js.push_back({{"dimension", s.dimension()}, {"connector_eigenvalue", s.connector_eigenvalue}});
  }
  return {{"coupling", c.coupling}, {"pairs", c.pairs.size()}, {"sets", std::move(js)}};
}

void run_exact_commuting(Context& ctx) {
  Diagnostics d;
  const ToyParams p = parse_toy(ctx.params, false, d);
  const PauliOperator h_t = three_spin_ring(p.n, p.j3, p.hx, p.conv);
  const PauliOperator unit = xxx_ring(p.n, 1.0, p.conv);
  const SharedSubspace joint = simultaneous_eigenbasis(h_t, unit, ctx.shared());
  const std::vector<double> lam_t(joint.eigs_a.data(), joint.eigs_a.data() + joint.eigs_a.size());
  const std::vector<double> lam_q(joint.eigs_b.data(), joint.eigs_b.data() + joint.eigs_b.size());
  const CrossingReport crossings = find_degeneracy_crossings(lam_t, lam_q);

  io::CsvTable crossing_table({"crossing", "coupling", "pairs", "sets"});
  io::CsvTable fidelity_table({"crossing", "set", "state", "t", "fidelity"});
  json cj = json::array();
  double worst = 0.0;
  for (std::size_t ci = 0; ci < crossings.crossings.size(); ++ci) {
    const Crossing& c = crossings.crossings[ci];
    const PauliOperator h_qs = xxx_ring(p.n, c.coupling, p.conv);
    const auto sets = simulatable_sets(h_t, h_qs, ctx.shared());
    crossing_table.row({fmt(ci), fmt(c.coupling), fmt(c.pairs.size()), fmt(sets.size())});
    worst = std::max(worst, sweep_sets(ctx, h_t, h_qs, sets, ci, p.states_per_set, p.times, fidelity_table));
    cj.push_back(crossing_json(c, sets));
  }
  ctx.write("crossings.csv", crossing_table.str());
  ctx.write("fidelity.csv", fidelity_table.str());
  ctx.report["dimension"] = joint.ambient_dimension();
  ctx.report["crossings"] = std::move(cj);
  ctx.report["always_degenerate_pairs"] = crossings.always_degenerate.size();
  ctx.report["max_fidelity_deviation"] = worst;
  ctx.report["all_exact"] = worst <= ctx.tol.fidelity_tol;
}

void run_exact_noncommuting(Context& ctx) {
  Diagnostics d;
  const ToyParams p = parse_toy(ctx.params, true, d);
  const PauliOperator h_t = three_spin_ring(p.n, p.j3, p.hx, p.conv);
  const PauliOperator field =
      uniform_field(p.n, p.field[0] * p.j3, p.field[1] * p.j3, p.field[2] * p.j3, p.conv);
  const PauliOperator unit = xxx_ring(p.n, 1.0, p.conv);
  const SharedSubspace theta = shared_subspace(h_t, field, ctx.shared());
  const CoDiagonalized cd = co_diagonalize(theta.common(), unit, ctx.shared());
  const RVector diff = cd.theta.eigs_a - cd.theta.eigs_b;
  const std::vector<double> lam_t(diff.data(), diff.data() + diff.size());
  const std::vector<double> lam_q(cd.eigs_extra.data(), cd.eigs_extra.data() + cd.eigs_extra.size());
  const CrossingReport crossings = find_degeneracy_crossings(lam_t, lam_q);

  io::CsvTable crossing_table({"crossing", "coupling", "pairs", "sets"});
  io::CsvTable fidelity_table({"crossing", "set", "state", "t", "fidelity"});
  json cj = json::array();
  double worst = 0.0;
  std::size_t degenerate_sets = 0;
  for (std::size_t ci = 0; ci < crossings.crossings.size(); ++ci) {
    const Crossing& c = crossings.crossings[ci];
    const PauliOperator h_qs = p.j3 == 0.0 ? field : xxx_ring(p.n, c.coupling, p.conv) + field;
    const auto sets = simulatable_sets(h_qs - h_t, theta, ctx.shared());
    degenerate_sets += sets.size();
    crossing_table.row({fmt(ci), fmt(c.coupling), fmt(c.pairs.size()), fmt(sets.size())});
    worst = std::max(worst, sweep_sets(ctx, h_t, h_qs, sets, ci, p.states_per_set, p.times, fidelity_table));
    cj.push_back(crossing_json(c, sets));
  }
  io::CsvTable theta_table({"index", "eig_target", "eig_field", "eig_xxx", "joint"});
  for (std::size_t i = 0; i < theta.dimension(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const bool joint = i < theta.common_dim;
    theta_table.row({fmt(i), fmt(theta.eigs_a(ii)), fmt(theta.eigs_b(ii)),
                     joint ? fmt(cd.eigs_extra(ii)) : std::string(), joint ? "1" : "0"});
  }
  if (!p.search.empty()) {
    io::CsvTable scan({"bx", "by", "bz", "commuting", "n_theta", "common_dim"});
    std::size_t best_nullity = 0;
    json best = nullptr;
    for (double bx : p.search[0]) {
      for (double by : p.search[1]) {
        for (double bz : p.search[2]) {
          const PauliOperator f = uniform_field(p.n, bx * p.j3, by * p.j3, bz * p.j3, p.conv);
          const bool commuting = commute(h_t, f);
          std::size_t nullity = std::size_t{1} << p.n, common = nullity;
          if (!commuting) {
            const SharedSubspace s = shared_subspace(h_t, f, ctx.shared());
            nullity = s.dimension();
            common = s.common_dim;
          }
          scan.row({fmt(bx), fmt(by), fmt(bz), commuting ? "1" : "0", fmt(nullity), fmt(common)});
          // Commuting fields are trivially "fully shared" and not what the scan is for.
          if (!commuting && (best.is_null() || nullity > best_nullity)) {
            best_nullity = nullity;
            best = {{"field", {bx, by, bz}}, {"n_theta", nullity}, {"common_dim", common}};
          }
        }
      }
    }
    ctx.write("field_search.csv", scan.str());
    ctx.report["field_search_best"] = std::move(best);
  }
  ctx.write("shared_subspace.csv", theta_table.str());
  ctx.write("crossings.csv", crossing_table.str());
  ctx.write("fidelity.csv", fidelity_table.str());
  ctx.report["n_theta"] = theta.dimension();
  ctx.report["common_dim"] = theta.common_dim;
  ctx.report["shared_subspace"] = io::to_json(theta);
  ctx.report["lemma1_bound"] = lemma1_bound(h_t, field);
  ctx.report["crossings"] = std::move(cj);
  ctx.report["degenerate_sets"] = degenerate_sets;
  ctx.report["always_degenerate_pairs"] = crossings.always_degenerate.size();
  ctx.report["max_fidelity_deviation"] = worst;
  ctx.report["all_exact"] = degenerate_sets > 0 && worst <= ctx.tol.fidelity_tol;
}

void run_shared_bound(Context& ctx) {
  Diagnostics d;
  const SharedBoundParams p = parse_shared_bound(ctx.params, d);
  io::CsvTable table({"sample", "bound", "nullity", "common_dim", "violation"});
  std::size_t violations = 0, commuting = 0;
  for (std::size_t s = 0; s < p.samples; ++s) {
    const PauliOperator a = random_local_operator(p.n, p.locality, p.geometry, ctx.rng);
    const PauliOperator b = random_local_operator(p.n, p.locality, p.geometry, ctx.rng);
    if (commute(a, b)) {
      ++commuting;
      continue;
    }
    const double bound = lemma1_bound(a, b);
    const SharedSubspace theta = shared_subspace(a, b, ctx.shared());
    const bool violation = bound < static_cast<double>(theta.common_dim) - 1e-9;
    violations += violation ? 1 : 0;
    table.row({fmt(s), fmt(bound), fmt(theta.dimension()), fmt(theta.common_dim), violation ? "1" : "0"});
  }
  io::CsvTable saturation({"n_sites", "bound"});
  json sat = json::array();
  for (std::size_t n = 1; n <= p.saturation_max_n; ++n) {
    const double bound = lemma1_bound(PauliOperator::term(PauliString::single(n, 0, Pauli::X), 1.0),
                                      PauliOperator::term(PauliString::single(n, 0, Pauli::Y), 1.0));
    saturation.row({fmt(n), fmt(bound)});
    sat.push_back({{"n_sites", n}, {"bound", bound}});
  }
  ctx.write("shared_bound.csv", table.str());
  ctx.write("saturation.csv", saturation.str());
  ctx.report["samples"] = p.samples;
  ctx.report["commuting_skipped"] = commuting;
  ctx.report["violations"] = violations;
  ctx.report["saturation"] = std::move(sat);
}

void run_diameter(Context& ctx, std::uint64_t seed) {
  Diagnostics d;
  const DiameterParams p = parse_diameter(ctx.params, d);
  const SimulatorAnsatz ansatz = make_ansatz(p.n, p.k_prime, p.geometry, p.beta, p.convention, p.floor);
  DiameterOptions opts;
  opts.max_iterations = p.max_iterations;
  opts.restarts = p.restarts;
  opts.seed = seed;
  opts.stall_tol = ctx.tol.stall_tol;
  opts.threads = ctx.opts.threads;

  io::CsvTable table({"k", "objective", "restart_min", "restart_max", "restarts_agree", "converged",
                      "iterations"});
  json results = json::array();
  std::vector<double> objectives;
  bool all_converged = true;
  for (std::size_t k : p.ks) {
    const PauliOperator target = build_z_chain_target(p.n, k, p.periodic);
    const OptimizationResult r = minimize_diameter(target, ansatz, opts);
    const auto [lo, hi] = std::minmax_element(r.restart_objectives.begin(), r.restart_objectives.end());
    table.row({fmt(k), fmt(r.objective), fmt(*lo), fmt(*hi), r.restarts_agree ? "1" : "0",
               r.converged ? "1" : "0", fmt(r.iterations)});
    json rj = io::to_json(r);
    rj["k"] = k;
    rj["target_diameter"] = spectral_diameter(target);
    results.push_back(std::move(rj));
    objectives.push_back(r.objective);
    all_converged = all_converged && r.converged;
  }
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < p.ks.size(); ++i) {
    if (p.ks[i] < p.ks[i + 1] && objectives[i] < objectives[i + 1] - opts.agreement_tol) monotone = false;
    if (p.ks[i] > p.ks[i + 1] && objectives[i] > objectives[i + 1] + opts.agreement_tol) monotone = false;
  }
  ctx.write("objectives.csv", table.str());
  ctx.report["ansatz"] = io::to_json(ansatz);
  ctx.report["results"] = std::move(results);
  ctx.report["monotone_nonincreasing_in_k"] = monotone;
  ctx.report["converged"] = all_converged;
  if (!all_converged) {
    ctx.result.exit_code = kExitNotConverged;
    ctx.result.messages.push_back("diameter minimization hit the iteration cap before converging");
  }
}

void run_short_time(Context& ctx) {
  Diagnostics d;
  const ShortTimeParams p = parse_short_time(ctx.params, d);
  const PauliOperator target = build_operator(p.target, ctx.rng);
  const auto generators = interaction_generators(p.n, 1, p.k_prime, p.geometry);
  io::CsvTable table({"state", "t", "distance"});
  json states = json::array();
  for (StatePreset preset : p.presets) {
    const StateVector psi = StateVector::preset(preset, p.n);
    const OptimizationResult r = short_time_best_simulator(target, psi, generators);
    // Largest overlap of the residual with a design column.
    const CVector residual =
        hamsim::apply(target - r.simulator(p.n), psi.amplitudes());
    double ortho = 0.0;
    for (const auto& g : generators) {
      ortho = std::max(ortho, std::abs(hamsim::apply(g, psi.amplitudes()).dot(residual).real()));
    }
    const DistanceCurve curve = short_time_distance_curve(r, p.times);
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
      table.row({to_string(preset), fmt(curve.times[i]), fmt(curve.distances[i])});
    }
    json sj = io::to_json(r);
    sj["state"] = to_string(preset);
    sj["residual"] = r.objective;
    sj["max_orthogonality_defect"] = ortho;
    states.push_back(std::move(sj));
  }
  ctx.write("distance.csv", table.str());
  ctx.report["target"] = io::to_json(target);
  ctx.report["states"] = std::move(states);
}

void run_bounds_compare(Context& ctx) {
  Diagnostics d;
  const PairParams p = parse_pair(ctx.params, false, d);
  const PauliOperator h_t = build_operator(p.target, ctx.rng);
  const PauliOperator h_qs = build_operator(p.simulator, ctx.rng);
  const BoundEvaluator eval(h_t, h_qs, p.norm);
  std::vector<BoundReport> rows;
  std::size_t b1_below = 0, b1_above = 0, ordering_violations = 0;
  std::optional<double> first_crossing;
  for (double t : p.times) {
    const BoundReport r = eval.at(t);
    const double linear = t * r.delta_h / 2.0;
    if (linear > r.b1 + 1e-12 || linear > r.b2 + 1e-12) ++ordering_violations;
    if (r.b1 < r.b2) ++b1_below;
    if (r.b1 > r.b2) {
      ++b1_above;
      if (!first_crossing) first_crossing = t;
    }
    rows.push_back(r);
  }
  ctx.write("bounds.csv", io::to_csv(rows));
  ctx.report["delta_h"] = eval.delta_h();
  ctx.report["connector_hs_norm"] = eval.connector_hs_norm();
  ctx.report["bch_threshold"] = eval.bch_threshold();
  ctx.report["points_b1_below_b2"] = b1_below;
  ctx.report["points_b1_above_b2"] = b1_above;
  ctx.report["first_b1_above_b2"] = first_crossing ? json(*first_crossing) : json(nullptr);
  ctx.report["ordering_violations"] = ordering_violations;
  ctx.report["target"] = io::to_json(h_t);
  ctx.report["simulator"] = io::to_json(h_qs);
}

void run_fidelity_sweep(Context& ctx) {
  Diagnostics d;
  const PairParams p = parse_pair(ctx.params, true, d);
  const PauliOperator h_t = build_operator(p.target, ctx.rng);
  const PauliOperator h_qs = build_operator(p.simulator, ctx.rng);
  const StateVector psi = build_state(p.state, ctx.rng);
  const FidelityCurve curve = fidelity_sweep(h_t, h_qs, psi, p.times, ctx.opts.threads);
  std::size_t violations = 0;
  double min_fid = 1.0;
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    min_fid = std::min(min_fid, curve.fidelities[i]);
    if (curve.fidelities[i] < curve.bound_curve[i] - 1e-9) ++violations;
  }
  ctx.write("fidelity.csv", io::to_csv(curve));
  ctx.report["min_fidelity"] = min_fid;
  ctx.report["bound_violations"] = violations;
  ctx.report["delta_h"] = spectral_diameter(h_qs - h_t);
  if (p.worst_case_t_max > 0.0) {
    const WorstCase wc = worst_case_fidelity(h_t, h_qs, p.worst_case_t_max);
    ctx.report["worst_case"] = {{"t", wc.t}, {"fidelity", wc.fidelity}};
  }
}

void run_parent(Context& ctx) {
  Diagnostics d;
  const ParentParams p = parse_parent(ctx.params, d);
  const StateVector psi = build_state(p.state, ctx.rng);
  std::size_t n = 0;
  while ((std::size_t{1} << n) < psi.dimension()) ++n;

  std::vector<PauliString> k_block, kprime_block;
  if (!p.k_block.empty()) {
    for (const auto& s : p.k_block) k_block.push_back(PauliString::parse(s));
    for (const auto& s : p.kprime_block) kprime_block.push_back(PauliString::parse(s));
  } else {
    k_block = interaction_generators(n, p.k_prime + 1, p.k, p.geometry);
    kprime_block = interaction_generators(n, 1, p.k_prime, p.geometry);
  }
  std::vector<PauliString> all = k_block;
  all.insert(all.end(), kprime_block.begin(), kprime_block.end());

  const CorrelationMatrix m = correlation_matrix(psi, all, k_block.size());
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(m.entries, Eigen::EigenvaluesOnly);
  io::CsvTable spectrum({"index", "eigenvalue"});
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    spectrum.row({fmt(static_cast<std::size_t>(i)), fmt(solver.eigenvalues()(i))});
  }
  ctx.write("correlation_spectrum.csv", spectrum.str());

  std::vector<std::string> names;
  for (const auto& g : all) names.push_back(g.str());
  ctx.report["generators"] = names;
  ctx.report["block_split"] = m.block_split;
  ctx.report["parent"] = io::to_json(parent_exists(psi, all, ctx.tol.parent_tol));
  try {
    ctx.report["necessary_condition"] =
        io::to_json(necessary_condition_check(psi, k_block, kprime_block, ctx.tol.condition_tol));
  } catch (const Error& e) {
    ctx.report["necessary_condition"] = {{"skipped", e.what()}};
  }
}

}  // namespace

std::vector<std::string> validate(const json& scenario, bool seed_supplied) {
  return parse(scenario, seed_supplied).diagnostics;
}

std::vector<std::string> validate_file(const std::filesystem::path& path, bool seed_supplied) {
  try {
    return validate(io::read_json(path), seed_supplied);
  } catch (const std::exception& e) {
    return {e.what()};
  }
}

RunResult run(const json& scenario, const RunOptions& opts) {
  RunResult invalid;
  invalid.exit_code = kExitInvalid;
  ToleranceProfile tol;
  try {
    tol = tolerance_profile(opts.tol_profile);
  } catch (const Error& e) {
    invalid.messages.push_back(e.what());
    return invalid;
  }
  Parsed parsed = parse(scenario, opts.seed.has_value());
  if (!parsed.diagnostics.empty()) {
    invalid.messages = std::move(parsed.diagnostics);
    return invalid;
  }
  const std::uint64_t seed = opts.seed ? *opts.seed : parsed.seed.value_or(0);
  Context ctx{parsed.params, make_rng(seed), tol, opts, json::object(), {}};
  try {
    switch (parsed.kind) {
      case Kind::exact_commuting: run_exact_commuting(ctx); break;
      case Kind::exact_noncommuting: run_exact_noncommuting(ctx); break;
      case Kind::shared_bound: run_shared_bound(ctx); break;
      case Kind::diameter_min: run_diameter(ctx, seed); break;
      case Kind::short_time: run_short_time(ctx); break;
      case Kind::bounds_compare: run_bounds_compare(ctx); break;
      case Kind::fidelity_sweep: run_fidelity_sweep(ctx); break;
      case Kind::parent_check: run_parent(ctx); break;
    }
  } catch (const DomainError& e) {
    invalid.messages.push_back(e.what());
    return invalid;
  } catch (const DimensionError& e) {
    invalid.messages.push_back(e.what());
    return invalid;
  }

  ctx.report["kind"] = to_string(parsed.kind);
  ctx.write("report.json", ctx.report.dump(2) + "\n");
  json inputs = scenario;
  inputs["seed"] = seed;
  json manifest = {{"kind", to_string(parsed.kind)},
                   {"inputs", std::move(inputs)},
                   {"seed", seed},
                   {"version", kVersion},
                   {"threads", opts.threads},
                   {"tolerance_profile", tol.name},
                   {"tolerances",
                    {{"kernel", tol.kernel_tol},
                     {"residual", tol.residual_tol},
                     {"fidelity", tol.fidelity_tol},
                     {"stall", tol.stall_tol},
                     {"parent", tol.parent_tol},
                     {"condition", tol.condition_tol}}}};
  ctx.result.files.push_back("manifest.json");
  manifest["outputs"] = ctx.result.files;
  io::write_text(opts.out_dir / "manifest.json", manifest.dump(2) + "\n");
  return ctx.result;
}

RunResult run_file(const std::filesystem::path& path, const RunOptions& opts) {
  json scenario;
  try {
    scenario = io::read_json(path);
  } catch (const std::exception& e) {
    RunResult r;
    r.exit_code = kExitInvalid;
    r.messages.push_back(e.what());
    return r;
  }
  return run(scenario, opts);
}

}  // namespace hamsim::scenario
