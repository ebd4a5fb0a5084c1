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

#include <string>
#include <string_view>
#include <vector>

#include "hamsim/pauli.hpp"
#include "hamsim/spectral.hpp"

namespace hamsim {

enum class StatePreset { zero, ghz, w, cosdit };

std::string to_string(StatePreset p);
StatePreset state_preset_from_string(std::string_view text);

/** Normalized pure state (unit 2-norm to 1e-10). */
class StateVector {
 public:
  /// Throws ContractError unless | ||amplitudes|| - 1 | <= tol.
  static StateVector from_amplitudes(CVector amplitudes, double tol = 1e-10);
  /// Rescales an arbitrary nonzero vector.
  static StateVector normalized(const CVector& v);
  /// |0...0>, GHZ, W (single excitation) or the uniform superposition on n sites.
  static StateVector preset(StatePreset p, std::size_t n_sites);

  const CVector& amplitudes() const { return amps_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }

 private:
  explicit StateVector(CVector v) : amps_(std::move(v)) {}
  CVector amps_;
};

/**
 * Both propagators of a (target, simulator) pair from one pair of
 * eigendecompositions; U(t) = exp(i t H_qs) exp(-i t H_t).
 */
class PairEvolution {
 public:
  PairEvolution(const PauliOperator& h_t, const PauliOperator& h_qs,
                const DenseOptions& opts = {});

  std::size_t dimension() const { return target_.dimension(); }
  /// |<psi| U(t) |psi>|.
  double fidelity(const StateVector& psi, double t) const;
  CMatrix propagator(double t) const;
  /// min over unit psi of |<psi| U(t) |psi>|.
  double worst_case_fidelity(double t) const;

 private:
  EigenSystem target_;
  EigenSystem simulator_;
};

double fidelity(const PauliOperator& h_t, const PauliOperator& h_qs, const StateVector& psi,
                double t);

/**
 * Distance from the origin to the convex hull of unit-modulus points
 * exp(i phase_k), which is the minimum of |<psi|U|psi>| for a unitary U with
 * these eigenphases. Zero when the points are not contained in an open
 * half circle.
 */
double unit_circle_hull_distance(std::vector<double> phases);

double worst_case_fidelity_at_t(const PauliOperator& h_t, const PauliOperator& h_qs, double t);

struct WorstCase {
  double t = 0.0;
  double fidelity = 1.0;
};

/// Grid scan of worst_case_fidelity over [0, t_max] with golden-section
/// refinement around the best grid cell.
WorstCase worst_case_fidelity(const PauliOperator& h_t, const PauliOperator& h_qs, double t_max,
                              std::size_t grid_points = 400);

struct FidelityCurve {
  std::vector<double> times;
  std::vector<double> fidelities;
  std::vector<double> bound_curve;  // 1 - eps_star(t)
};

FidelityCurve fidelity_sweep(const PauliOperator& h_t, const PauliOperator& h_qs,
                             const StateVector& psi, const std::vector<double>& times,
                             std::size_t threads = 1);

}  // namespace hamsim
