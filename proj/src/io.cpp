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

#include "hamsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hamsim/errors.hpp"

namespace hamsim::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

json to_json(const PauliOperator& op) {
  json terms = json::array();
  for (const auto& [s, c] : op.terms()) terms.push_back({{"string", s.str()}, {"coeff", c}});
  return {{"n_sites", op.n_sites()}, {"terms", std::move(terms)}};
}

PauliOperator operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms")) throw DomainError("operator JSON needs a terms array");
  const auto& terms = j.at("terms");
  std::size_t n = j.value("n_sites", std::size_t{0});
  if (n == 0 && !terms.empty()) n = terms.front().at("string").get<std::string>().size();
  PauliOperator op(n);
  for (const auto& t : terms) {
    op.add_term(PauliString::parse(t.at("string").get<std::string>()), t.at("coeff").get<double>());
  }
  return op;
}

json to_json(const StateVector& psi) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    amps.push_back({psi.amplitudes()(i).real(), psi.amplitudes()(i).imag()});
  }
  return {{"dimension", psi.dimension()}, {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const json& j) {
  if (j.contains("preset")) {
    return StateVector::preset(state_preset_from_string(j.at("preset").get<std::string>()),
                               j.at("n_sites").get<std::size_t>());
  }
  if (!j.contains("amplitudes")) throw DomainError("state JSON needs a preset or amplitudes");
  const auto& amps = j.at("amplitudes");
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto& a = amps[i];
    v(static_cast<Eigen::Index>(i)) =
        a.is_array() ? Complex(a.at(0).get<double>(), a.at(1).get<double>()) : Complex(a.get<double>());
  }
  const auto dim = static_cast<std::size_t>(v.size());
  if (dim == 0 || (dim & (dim - 1)) != 0) throw DimensionError("amplitude count must be a power of two");
  return j.value("normalize", false) ? StateVector::normalized(v) : StateVector::from_amplitudes(v);
}

namespace {

json vec(const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

json to_json(const SharedSubspace& theta) {
  json basis = json::array();
  for (Eigen::Index c = 0; c < theta.basis.cols(); ++c) {
    std::vector<double> col;
    col.reserve(2 * static_cast<std::size_t>(theta.basis.rows()));
    for (Eigen::Index r = 0; r < theta.basis.rows(); ++r) {
      col.push_back(theta.basis(r, c).real());
      col.push_back(theta.basis(r, c).imag());
    }
    basis.push_back(std::move(col));
  }
  return {{"n_theta", theta.dimension()},
          {"common_dim", theta.common_dim},
          {"ambient_dimension", theta.ambient_dimension()},
          {"eigs_a", vec(theta.eigs_a)},
          {"eigs_b", vec(theta.eigs_b)},
          {"residual_a", vec(theta.residual_a)},
          {"residual_b", vec(theta.residual_b)},
          {"basis", std::move(basis)}};
}

json to_json(const SimulatorAnsatz& a) {
  std::vector<std::string> floor;
  for (std::size_t i : a.floor_set) floor.push_back(a.generators[i].str());
  std::vector<std::string> gens;
  for (const auto& g : a.generators) gens.push_back(g.str());
  return {{"n_sites", a.n_sites},     {"k_prime", a.k_prime},
          {"geometry", to_string(a.geometry)}, {"beta", a.beta},
          {"beta_convention", to_string(a.beta_convention)},
          {"floor_value", a.floor_value()}, {"generators", gens}, {"floor_set", floor}};
}

SimulatorAnsatz ansatz_from_json(const json& j) {
  return make_ansatz(j.at("n_sites").get<std::size_t>(), j.at("k_prime").get<std::size_t>(),
                     geometry_from_string(j.value("geometry", std::string("chain_periodic"))),
                     j.value("beta", 0.0),
                     beta_convention_from_string(j.value("beta_convention", std::string("coefficient"))),
                     floor_mode_from_string(j.value("floor", std::string("all_kprime"))));
}

json to_json(const OptimizationResult& r) {
  json coeffs = json::object();
  for (std::size_t i = 0; i < r.generators.size() && i < r.coefficients.size(); ++i) {
    coeffs[r.generators[i].str()] = r.coefficients[i];
  }
  return {{"objective", r.objective},
          {"coefficients", std::move(coeffs)},
          {"diagnostics",
           {{"iterations", r.iterations},
            {"converged", r.converged},
            {"restarts_agree", r.restarts_agree},
            {"restart_objectives", r.restart_objectives},
            {"best_restart", r.best_restart}}}};
}

json to_json(const BoundReport& b) {
  return {{"t", b.t},   {"delta_h", b.delta_h}, {"eps_star", b.eps_star},
          {"b1", b.b1}, {"b2", b.b2},           {"bch_convergent", b.bch_convergent}};
}

json to_json(const ParentReport& p) {
  json kernel = json::array();
  for (const auto& v : p.kernel) kernel.push_back(vec(v));
  return {{"exists", p.exists},
          {"min_eigenvalue", p.min_eigenvalue},
          {"kernel", std::move(kernel)},
          {"residuals", p.residuals}};
}

json to_json(const NecessaryConditionReport& r) {
  return {{"lhs", r.lhs},
          {"rhs", r.rhs},
          {"abs_diff", r.abs_diff},
          {"condition_met", r.condition_met},
          {"dim_kk", r.dim_kk},
          {"dim_kprime", r.dim_kpkp}};
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) { row(header); }

CsvTable& CsvTable::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw IntegrityError("CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
  return *this;
}

std::string CsvTable::str() const { return text_; }

std::string to_csv(const std::vector<BoundReport>& reports) {
  CsvTable table({"t", "delta_h", "eps_star", "b1", "b2", "bch_convergent"});
  for (const auto& r : reports) {
    table.row({format_double(r.t), format_double(r.delta_h), format_double(r.eps_star),
               format_double(r.b1), format_double(r.b2), r.bch_convergent ? "1" : "0"});
  }
  return table.str();
}

std::string to_csv(const FidelityCurve& c) {
  CsvTable table({"t", "fidelity", "bound"});
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    table.row({format_double(c.times[i]), format_double(c.fidelities[i]),
               format_double(c.bound_curve[i])});
  }
  return table.str();
}

std::string to_csv(const DistanceCurve& c) {
  CsvTable table({"t", "distance"});
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    table.row({format_double(c.times[i]), format_double(c.distances[i])});
  }
  return table.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

}  // namespace hamsim::io
