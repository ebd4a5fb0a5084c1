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

#include "hamsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hamsim/bounds.hpp"
#include "hamsim/detail/parallel.hpp"

namespace hamsim {

std::string to_string(StatePreset p) {
  switch (p) {
    case StatePreset::zero: return "zero";
    case StatePreset::ghz: return "ghz";
    case StatePreset::w: return "w";
    case StatePreset::cosdit: return "cosdit";
  }
  return "unknown";
}

StatePreset state_preset_from_string(std::string_view text) {
  if (text == "zero") return StatePreset::zero;
  if (text == "ghz") return StatePreset::ghz;
  if (text == "w") return StatePreset::w;
  if (text == "cosdit") return StatePreset::cosdit;
  throw DomainError("unknown state preset '" + std::string(text) +
                    "' (expected zero, ghz, w or cosdit)");
}

StateVector StateVector::from_amplitudes(CVector amplitudes, double tol) {
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw ContractError("state vector norm " + std::to_string(norm) + " differs from 1");
  }
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::normalized(const CVector& v) {
  const double norm = v.norm();
  if (norm == 0.0) throw DomainError("cannot normalize the zero vector");
  return StateVector(v / norm);
}

StateVector StateVector::preset(StatePreset p, std::size_t n_sites) {
  if (n_sites == 0 || n_sites > 30) throw DomainError("state presets need 1..30 sites");
  const auto dim = Eigen::Index{1} << n_sites;
  CVector v = CVector::Zero(dim);
  switch (p) {
    case StatePreset::zero:
      v(0) = 1.0;
      break;
    case StatePreset::ghz:
      v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
      break;
    case StatePreset::w:
      for (std::size_t s = 0; s < n_sites; ++s) {
        v(Eigen::Index{1} << s) = 1.0 / std::sqrt(static_cast<double>(n_sites));
      }
      break;
    case StatePreset::cosdit:
      v.setConstant(1.0 / std::sqrt(static_cast<double>(dim)));
      break;
  }
  return StateVector(std::move(v));
}

namespace {

CVector phase_vector(const RVector& eigenvalues, double t, int sign) {
  CVector out(eigenvalues.size());
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = std::polar(1.0, sign * t * eigenvalues(i));
  return out;
}

}  // namespace

PairEvolution::PairEvolution(const PauliOperator& h_t, const PauliOperator& h_qs,
                             const DenseOptions& opts)
    : target_(eigensystem(h_t, opts)), simulator_(eigensystem(h_qs, opts)) {
  if (h_t.n_sites() != h_qs.n_sites()) throw DimensionError("PairEvolution: site counts differ");
}

double PairEvolution::fidelity(const StateVector& psi, double t) const {
  if (psi.dimension() != dimension()) {
    throw DimensionError("fidelity: state dimension " + std::to_string(psi.dimension()) +
                         " vs Hamiltonian dimension " + std::to_string(dimension()));
  }
  const CVector& v = psi.amplitudes();
  // exp(-i t H_t) |psi>
  CVector a = target_.eigenvectors.adjoint() * v;
  a = a.cwiseProduct(phase_vector(target_.eigenvalues, t, -1));
  const CVector evolved = target_.eigenvectors * a;
  // <psi| exp(i t H_qs) = (exp(-i t H_qs) |psi>)^dagger
  CVector b = simulator_.eigenvectors.adjoint() * v;
  b = b.cwiseProduct(phase_vector(simulator_.eigenvalues, t, -1));
  const CVector back = simulator_.eigenvectors * b;
  return std::abs(back.dot(evolved));
}

CMatrix PairEvolution::propagator(double t) const {
  return evolve(simulator_, t, +1) * evolve(target_, t, -1);
}

double unit_circle_hull_distance(std::vector<double> phases) {
  if (phases.empty()) return 1.0;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (double& p : phases) {
    p = std::fmod(p, kTwoPi);
    if (p < 0.0) p += kTwoPi;
  }
  std::sort(phases.begin(), phases.end());
  double largest_gap = kTwoPi - (phases.back() - phases.front());
  for (std::size_t i = 1; i < phases.size(); ++i) {
    largest_gap = std::max(largest_gap, phases[i] - phases[i - 1]);
  }
  const double span = kTwoPi - largest_gap;
  if (span >= std::numbers::pi) return 0.0;
  return std::cos(span / 2.0);
}

double PairEvolution::worst_case_fidelity(double t) const {
  Eigen::ComplexEigenSolver<CMatrix> solver(propagator(t), false);
  const CVector& ev = solver.eigenvalues();
  std::vector<double> phases(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) phases[static_cast<std::size_t>(i)] = std::arg(ev(i));
  return unit_circle_hull_distance(std::move(phases));
}

double fidelity(const PauliOperator& h_t, const PauliOperator& h_qs, const StateVector& psi,
                double t) {
  return PairEvolution(h_t, h_qs).fidelity(psi, t);
}

double worst_case_fidelity_at_t(const PauliOperator& h_t, const PauliOperator& h_qs, double t) {
  return PairEvolution(h_t, h_qs).worst_case_fidelity(t);
}

WorstCase worst_case_fidelity(const PauliOperator& h_t, const PauliOperator& h_qs, double t_max,
                              std::size_t grid_points) {
  if (!(t_max >= 0.0)) throw DomainError("worst_case_fidelity: t_max must be nonnegative");
  if (grid_points < 2) throw DomainError("worst_case_fidelity: need at least two grid points");
  const PairEvolution pair(h_t, h_qs);
  const double step = t_max / static_cast<double>(grid_points - 1);
  WorstCase best{0.0, pair.worst_case_fidelity(0.0)};
  std::size_t best_index = 0;
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double t = step * static_cast<double>(i);
    const double f = pair.worst_case_fidelity(t);
    if (f < best.fidelity) {
      best = {t, f};
      best_index = i;
    }
  }
  if (step == 0.0) return best;
  // Golden-section search on the two cells around the best grid point.
  double lo = step * static_cast<double>(best_index == 0 ? 0 : best_index - 1);
  double hi = std::min(t_max, step * static_cast<double>(best_index + 1));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = pair.worst_case_fidelity(x1), f2 = pair.worst_case_fidelity(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, t_max); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = pair.worst_case_fidelity(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = pair.worst_case_fidelity(x2);
    }
  }
  if (f1 < best.fidelity) best = {x1, f1};
  if (f2 < best.fidelity) best = {x2, f2};
  return best;
}

FidelityCurve fidelity_sweep(const PauliOperator& h_t, const PauliOperator& h_qs,
                             const StateVector& psi, const std::vector<double>& times,
                             std::size_t threads) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw DomainError("fidelity_sweep: times must be nonnegative and ascending");
    }
  }
  FidelityCurve curve;
  if (times.empty()) return curve;
  const PairEvolution pair(h_t, h_qs);
  const double delta = spectral_diameter(h_qs - h_t);
  curve.times = times;
  curve.fidelities.resize(times.size());
  curve.bound_curve.resize(times.size());
  detail::parallel_for(times.size(), threads, [&](std::size_t i) {
    curve.fidelities[i] = pair.fidelity(psi, times[i]);
    curve.bound_curve[i] = 1.0 - epsilon_star_from_diameter(delta, times[i]);
  });
  return curve;
}

}  // namespace hamsim
