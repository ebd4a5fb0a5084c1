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

#include "hamsim/connector_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "hamsim/detail/parallel.hpp"
#include "hamsim/errors.hpp"

namespace hamsim {

std::string to_string(BetaConvention c) {
  return c == BetaConvention::coefficient ? "coefficient" : "trace";
}

BetaConvention beta_convention_from_string(std::string_view text) {
  if (text == "coefficient") return BetaConvention::coefficient;
  if (text == "trace") return BetaConvention::trace;
  throw DomainError("unknown beta_convention '" + std::string(text) +
                    "' (expected coefficient or trace)");
}

std::string to_string(FloorMode m) { return m == FloorMode::all_kprime ? "all_kprime" : "none"; }

FloorMode floor_mode_from_string(std::string_view text) {
  if (text == "all_kprime") return FloorMode::all_kprime;
  if (text == "none") return FloorMode::none;
  throw DomainError("unknown floor mode '" + std::string(text) + "' (expected all_kprime or none)");
}

double SimulatorAnsatz::floor_value() const {
  if (beta_convention == BetaConvention::coefficient) return beta;
  return std::ldexp(beta, -static_cast<int>(n_sites));
}

void SimulatorAnsatz::validate() const {
  if (generators.empty()) throw DomainError("ansatz has no generators");
  if (!(beta >= 0.0)) throw DomainError("strength floor beta must be nonnegative");
  for (const auto& g : generators) {
    if (g.n_sites() != n_sites) throw DimensionError("ansatz generator on the wrong number of sites");
    if (g.locality() > k_prime) throw ContractError("ansatz generator " + g.str() + " exceeds k'");
  }
  for (std::size_t i : floor_set) {
    if (i >= generators.size()) throw ContractError("floor index out of range");
    if (generators[i].locality() != k_prime) {
      throw ContractError("floor generator " + generators[i].str() + " is not k'-local");
    }
  }
}

PauliOperator SimulatorAnsatz::simulator(const std::vector<double>& coefficients) const {
  return combine(n_sites, generators, coefficients);
}

SimulatorAnsatz make_ansatz(std::size_t n_sites, std::size_t k_prime, Geometry geometry,
                            double beta, BetaConvention convention, FloorMode floor) {
  if (k_prime == 0 || k_prime > n_sites) throw DomainError("k' must lie in [1, n_sites]");
  SimulatorAnsatz a;
  a.n_sites = n_sites;
  a.k_prime = k_prime;
  a.geometry = geometry;
  a.beta = beta;
  a.beta_convention = convention;
  a.generators = interaction_generators(n_sites, 1, k_prime, geometry);
  if (floor == FloorMode::all_kprime) {
    for (std::size_t i = 0; i < a.generators.size(); ++i) {
      if (a.generators[i].locality() == k_prime) a.floor_set.push_back(i);
    }
  }
  a.validate();
  return a;
}

PauliOperator OptimizationResult::simulator(std::size_t n_sites) const {
  return combine(n_sites, generators, coefficients);
}

DiameterProblem::DiameterProblem(const PauliOperator& target, std::vector<PauliString> generators,
                                 const DenseOptions& opts)
    : generators_(std::move(generators)), target_(dense(target, opts)) {
  mats_.reserve(generators_.size());
  for (const auto& g : generators_) {
    if (g.n_sites() != target.n_sites()) throw DimensionError("generator/target site count mismatch");
    mats_.push_back(dense(g));
  }
}

CMatrix DiameterProblem::connector(const RVector& c) const {
  CMatrix h = -target_;
  for (std::size_t i = 0; i < mats_.size(); ++i) h += c(static_cast<Eigen::Index>(i)) * mats_[i];
  return h;
}

double DiameterProblem::value(const RVector& c) const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(connector(c), Eigen::EigenvaluesOnly);
  const RVector& w = solver.eigenvalues();
  return w(w.size() - 1) - w(0);
}

double DiameterProblem::value_and_subgradient(const RVector& c, RVector& grad,
                                              double eigenspace_tol) const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(connector(c));
  const RVector& w = solver.eigenvalues();
  const CMatrix& v = solver.eigenvectors();
  const Eigen::Index dim = w.size();
  Eigen::Index n_bot = 1, n_top = 1;
  while (n_bot < dim && w(n_bot) < w(0) + eigenspace_tol) ++n_bot;
  while (n_top < dim && w(dim - 1 - n_top) > w(dim - 1) - eigenspace_tol) ++n_top;
  const CMatrix bot = v.leftCols(n_bot);
  const CMatrix top = v.rightCols(n_top);
  grad.resize(static_cast<Eigen::Index>(mats_.size()));
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    const double gt = (top.adjoint() * mats_[i] * top).trace().real() / static_cast<double>(n_top);
    const double gb = (bot.adjoint() * mats_[i] * bot).trace().real() / static_cast<double>(n_bot);
    grad(static_cast<Eigen::Index>(i)) = gt - gb;
  }
  return w(dim - 1) - w(0);
}

double diameter_objective(const PauliOperator& target, const std::vector<PauliString>& generators,
                          const std::vector<double>& coefficients) {
  if (coefficients.size() != generators.size()) {
    throw DimensionError("diameter_objective: coefficient count differs from generator count");
  }
  const DiameterProblem problem(target, generators);
  return problem.value(Eigen::Map<const RVector>(coefficients.data(),
                                                 static_cast<Eigen::Index>(coefficients.size())));
}

namespace {

struct RestartOutcome {
  RVector best;
  double objective = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;
};

void project(RVector& c, const std::vector<std::size_t>& floor_set, double floor) {
  for (std::size_t i : floor_set) {
    const auto j = static_cast<Eigen::Index>(i);
    c(j) = std::max(c(j), floor);
  }
}

RestartOutcome run_restart(const DiameterProblem& problem, const SimulatorAnsatz& ansatz,
                           const DiameterOptions& opts, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 0.1);
  const double floor = ansatz.floor_value();

  RVector c(static_cast<Eigen::Index>(problem.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
  project(c, ansatz.floor_set, floor);

  RestartOutcome out;
  RVector grad;
  double delta = -1.0;
  double best_at_refresh = std::numeric_limits<double>::infinity();
  std::vector<double> history;  // best objective at each iteration
  history.reserve(opts.max_iterations);
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    const double f = problem.value_and_subgradient(c, grad, opts.eigenspace_tol);
    out.iterations = it + 1;
    if (f < out.objective) {
      out.objective = f;
      out.best = c;
    }
    history.push_back(out.objective);
    if (delta < 0.0) delta = 0.5 * f;
    if (it > 0 && it % opts.refresh == 0) {
      if (best_at_refresh - out.objective < 0.1 * delta) delta *= 0.5;
      best_at_refresh = out.objective;
    }
    if (out.objective <= 1e-12) {
      out.converged = true;
      break;
    }
    if (history.size() > opts.stall_window && delta <= opts.stall_tol) {
      const double gain = history[history.size() - 1 - opts.stall_window] - out.objective;
      if (gain <= opts.stall_tol * std::max(1.0, out.objective)) {
        out.converged = true;
        break;
      }
    }
    const double gg = grad.squaredNorm();
    if (gg < 1e-30) {
      out.converged = true;
      break;
    }
    c -= ((f - (out.objective - delta)) / gg) * grad;
    project(c, ansatz.floor_set, floor);
  }
  return out;
}

void check_feasible(const OptimizationResult& r, const SimulatorAnsatz& ansatz) {
  if (r.coefficients.size() != ansatz.generators.size()) {
    throw IntegrityError("diameter solver returned the wrong number of coefficients");
  }
  const double floor = ansatz.floor_value();
  for (std::size_t i : ansatz.floor_set) {
    if (r.coefficients[i] < floor - 1e-9) {
      throw IntegrityError("diameter solver returned a coefficient below the strength floor");
    }
  }
}

}  // namespace

OptimizationResult minimize_diameter(const PauliOperator& target, const SimulatorAnsatz& ansatz,
                                     const DiameterOptions& opts) {
  ansatz.validate();
  if (target.n_sites() != ansatz.n_sites) throw DimensionError("target/ansatz site count mismatch");
  if (opts.backend != nullptr) {
    OptimizationResult r = opts.backend->solve(target, ansatz, opts);
    check_feasible(r, ansatz);
    return r;
  }
  if (opts.restarts == 0) throw DomainError("minimize_diameter needs at least one restart");
  if (opts.refresh == 0) throw DomainError("refresh period must be positive");

  const DiameterProblem problem(target, ansatz.generators, opts.dense);
  std::vector<RestartOutcome> outcomes(opts.restarts);
  detail::parallel_for(opts.restarts, opts.threads, [&](std::size_t r) {
    outcomes[r] = run_restart(problem, ansatz, opts, r);
  });

  OptimizationResult result;
  result.generators = ansatz.generators;
  result.converged = true;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const auto& o = outcomes[r];
    result.restart_objectives.push_back(o.objective);
    result.iterations += o.iterations;
    result.converged = result.converged && o.converged;
    lo = std::min(lo, o.objective);
    hi = std::max(hi, o.objective);
    if (r == 0 || o.objective < outcomes[result.best_restart].objective) result.best_restart = r;
  }
  const auto& best = outcomes[result.best_restart];
  result.objective = best.objective;
  result.coefficients.assign(best.best.data(), best.best.data() + best.best.size());
  result.restarts_agree = hi - lo <= opts.agreement_tol;
  check_feasible(result, ansatz);
  return result;
}

OptimizationResult short_time_best_simulator(const PauliOperator& target, const StateVector& psi0,
                                             const std::vector<PauliString>& generators) {
  const std::size_t dim = std::size_t{1} << target.n_sites();
  if (psi0.dimension() != dim) throw DimensionError("short_time: state dimension mismatch");
  const auto d = static_cast<Eigen::Index>(dim);
  const auto m = static_cast<Eigen::Index>(generators.size());
  RMatrix design(2 * d, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const CVector col = apply(generators[static_cast<std::size_t>(i)], psi0.amplitudes());
    design.col(i).head(d) = col.real();
    design.col(i).tail(d) = col.imag();
  }
  const CVector rhs_c = apply(target, psi0.amplitudes());
  RVector rhs(2 * d);
  rhs.head(d) = rhs_c.real();
  rhs.tail(d) = rhs_c.imag();

  OptimizationResult result;
  result.generators = generators;
  result.converged = true;
  result.restart_objectives.clear();
  if (m == 0) {
    result.objective = rhs.norm();
    return result;
  }
  Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(design);
  const RVector c = cod.solve(rhs);
  result.coefficients.assign(c.data(), c.data() + c.size());
  result.objective = (design * c - rhs).norm();
  result.iterations = 1;
  return result;
}

OptimizationResult short_time_best_simulator(const PauliOperator& target, const StateVector& psi0,
                                             const SimulatorAnsatz& ansatz) {
  return short_time_best_simulator(target, psi0, ansatz.generators);
}

DistanceCurve short_time_distance_curve(const OptimizationResult& result,
                                        const std::vector<double>& times) {
  DistanceCurve curve;
  curve.times = times;
  curve.distances.reserve(times.size());
  for (double t : times) curve.distances.push_back(t * result.objective);
  return curve;
}

}  // namespace hamsim
