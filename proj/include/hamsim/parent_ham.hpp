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

#include <vector>

#include "hamsim/dynamics.hpp"
#include "hamsim/pauli.hpp"

namespace hamsim {

/**
 * M_ij = 1/2 <psi|{L_i, L_j}|psi> - <psi|L_i|psi><psi|L_j|psi>.
 * Generators [0, block_split) form the k-body block and the rest the k'-body
 * block.
 */
struct CorrelationMatrix {
  std::vector<PauliString> generators;
  RMatrix entries;
  std::size_t block_split = 0;
};

CorrelationMatrix correlation_matrix(const StateVector& psi,
                                     const std::vector<PauliString>& generators,
                                     std::size_t block_split = 0);

inline constexpr double kParentKernelTolerance = 1e-8;

struct ParentReport {
  bool exists = false;
  double min_eigenvalue = 0.0;
  /// Orthonormal coefficient vectors spanning the (numerical) kernel of M.
  std::vector<RVector> kernel;
  /// ||(H_v - <H_v>) psi|| for each kernel vector.
  std::vector<double> residuals;
};

ParentReport parent_exists(const StateVector& psi, const std::vector<PauliString>& generators,
                           double tol = kParentKernelTolerance);

struct DetSumCheck {
  double lhs = 0.0;  // sum over minors
  double rhs = 0.0;  // det(A + B) - det A - det B
};

inline constexpr std::size_t kMaxMinorDimension = 8;

/// Both sides of the Laplace-type expansion of det(A + B); N <= 8.
DetSumCheck det_sum_identity_check(const RMatrix& a, const RMatrix& b);

struct NecessaryConditionReport {
  double lhs = 0.0;  // minor sum for A = M_k'k', B = -M_k'k M_kk^-1 M_kk'
  double rhs = 0.0;  // -det B
  double abs_diff = 0.0;
  bool condition_met = false;
  std::size_t dim_kk = 0;
  std::size_t dim_kpkp = 0;
};

inline constexpr double kNecessaryConditionTolerance = 1e-8;

/// k-body block first, k'-body block second; throws ContractError when M_kk is singular.
NecessaryConditionReport necessary_condition_check(const StateVector& psi,
                                                   const std::vector<PauliString>& k_block,
                                                   const std::vector<PauliString>& kprime_block,
                                                   double tol = kNecessaryConditionTolerance);

/// Blocks from the interaction bases: localities (k', k] and [1, k'].
NecessaryConditionReport necessary_condition_check(const StateVector& psi, std::size_t k,
                                                   std::size_t k_prime, Geometry geometry,
                                                   double tol = kNecessaryConditionTolerance);

}  // namespace hamsim
