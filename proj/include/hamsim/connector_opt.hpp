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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hamsim/dynamics.hpp"
#include "hamsim/pauli.hpp"

namespace hamsim {

/// How the strength floor beta is applied to floor-set coefficients.
enum class BetaConvention {
  coefficient,  // c_i >= beta
  trace,        // Tr[H_QS Lambda_i] = 2^n c_i >= beta
};

/// Which generators carry the floor.
enum class FloorMode { all_kprime, none };

std::string to_string(BetaConvention c);
BetaConvention beta_convention_from_string(std::string_view text);
std::string to_string(FloorMode m);
FloorMode floor_mode_from_string(std::string_view text);

/** Simulator family: H_QS = sum_i c_i generators[i]. */
struct SimulatorAnsatz {
  std::size_t n_sites = 0;
  std::size_t k_prime = 0;
  Geometry geometry = Geometry::chain_periodic;
  std::vector<PauliString> generators;
  double beta = 0.0;
  BetaConvention beta_convention = BetaConvention::coefficient;
  std::vector<std::size_t> floor_set;

  /// Lower bound on floor-set coefficients after the convention is applied.
  double floor_value() const;
  /// Throws DomainError/ContractError on a malformed ansatz.
  void validate() const;
  PauliOperator simulator(const std::vector<double>& coefficients) const;
};

/// Every generator of locality 1..k' under `geometry`; with FloorMode::all_kprime
/// the floor applies to all generators of locality exactly k'.
SimulatorAnsatz make_ansatz(std::size_t n_sites, std::size_t k_prime, Geometry geometry,
                            double beta, BetaConvention convention = BetaConvention::coefficient,
                            FloorMode floor = FloorMode::all_kprime);

struct OptimizationResult {
  std::vector<PauliString> generators;
  std::vector<double> coefficients;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool restarts_agree = true;
  std::vector<double> restart_objectives;
  std::size_t best_restart = 0;

  PauliOperator simulator(std::size_t n_sites) const;
};

class DiameterBackend;

struct DiameterOptions {
  std::size_t max_iterations = 5000;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  /// Polyak target refresh period.
  std::size_t refresh = 50;
  std::size_t stall_window = 200;
  double stall_tol = 1e-4;
  /// Width used to collect the extreme eigenspaces for the averaged subgradient.
  double eigenspace_tol = 1e-6;
  double agreement_tol = 1e-3;
  std::size_t threads = 1;
  /// Optional external solver; when set it replaces the built-in method.
  const DiameterBackend* backend = nullptr;
  DenseOptions dense{};
};

/// Interface for plugging an external solver (e.g. an SDP code) into
/// minimize_diameter. Results are checked for feasibility on return.
class DiameterBackend {
 public:
  virtual ~DiameterBackend() = default;
  virtual OptimizationResult solve(const PauliOperator& target, const SimulatorAnsatz& ansatz,
                                   const DiameterOptions& opts) const = 0;
};

/**
 * f(c) = lambda_max(h) - lambda_min(h) for h(c) = sum_i c_i Lambda_i - H_T,
 * with dense generator matrices cached.
 */
class DiameterProblem {
 public:
  DiameterProblem(const PauliOperator& target, std::vector<PauliString> generators,
                  const DenseOptions& opts = {});

  std::size_t size() const { return generators_.size(); }
  CMatrix connector(const RVector& c) const;
  double value(const RVector& c) const;
  /// Objective plus the subgradient averaged over both extreme eigenspaces.
  double value_and_subgradient(const RVector& c, RVector& grad, double eigenspace_tol) const;

 private:
  std::vector<PauliString> generators_;
  std::vector<CMatrix> mats_;
  CMatrix target_;
};

double diameter_objective(const PauliOperator& target, const std::vector<PauliString>& generators,
                          const std::vector<double>& coefficients);

/// Projected subgradient with Polyak steps over `opts.restarts` random starts.
OptimizationResult minimize_diameter(const PauliOperator& target, const SimulatorAnsatz& ansatz,
                                     const DiameterOptions& opts = {});

/**
 * Real least squares min_c ||(H_T - sum_i c_i Lambda_i)|psi0>||, solved with a
 * complete orthogonal decomposition (minimum-norm solution when rank
 * deficient). objective is the residual norm; converged is always true.
 */
OptimizationResult short_time_best_simulator(const PauliOperator& target, const StateVector& psi0,
                                             const std::vector<PauliString>& generators);
/// Uses ansatz.generators; the strength floor does not apply here.
OptimizationResult short_time_best_simulator(const PauliOperator& target, const StateVector& psi0,
                                             const SimulatorAnsatz& ansatz);

struct DistanceCurve {
  std::vector<double> times;
  std::vector<double> distances;
};

/// Points (t, t * residual).
DistanceCurve short_time_distance_curve(const OptimizationResult& result,
                                        const std::vector<double>& times);

}  // namespace hamsim
