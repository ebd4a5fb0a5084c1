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

#include <span>
#include <utility>
#include <vector>

#include "hamsim/pauli.hpp"
#include "hamsim/spectral.hpp"

namespace hamsim {

/**
 * Orthonormal vectors on which two Hamiltonians H_A, H_B are simultaneously
 * diagonal, together with the Rayleigh quotients of both operators.
 *
 * For a non-commuting pair the basis spans the commutator kernel. Its leading
 * `common_dim` columns are exact joint eigenvectors (residual within
 * tolerance); the remaining columns complete the kernel and are only
 * eigenvectors of the compressed operators. `residual_a` / `residual_b`
 * record ||H v - e v|| for every column.
 */
struct SharedSubspace {
  CMatrix basis;
  RVector eigs_a;
  RVector eigs_b;
  RVector residual_a;
  RVector residual_b;
  std::size_t common_dim = 0;

  /// N_theta, the number of basis vectors.
  std::size_t dimension() const { return static_cast<std::size_t>(basis.cols()); }
  std::size_t ambient_dimension() const { return static_cast<std::size_t>(basis.rows()); }
  /// The leading joint-eigenvector block.
  SharedSubspace common() const;
};

struct SharedOptions {
  /// Commutator kernel threshold, relative to ||[A,B]||_2.
  double kernel_tol = kDefaultKernelTolerance;
  /// Degeneracy threshold; values <= 0 select default_degeneracy_tolerance(||H||_2).
  double degeneracy_tol = 0.0;
  /// Joint-eigenvector residual threshold, relative to max(1, ||H||_2).
  double residual_tol = 1e-8;
};

/**
 * One orthonormal basis diagonalizing a commuting pair: eigendecompose h_a
 * and, inside every degenerate cluster of h_a, rotate by the eigenvectors of
 * the cluster-restricted h_b. Raises ContractError when the pair does not
 * commute.
 */
SharedSubspace simultaneous_eigenbasis(const PauliOperator& h_a, const PauliOperator& h_b,
                                       const SharedOptions& opts = {});

/**
 * Shared subspace of a non-commuting pair: the kernel of [h_a, h_b], split
 * into the largest h_a/h_b-invariant part (re-rotated to joint eigenvectors)
 * followed by its complement within the kernel (re-rotated on the
 * compressions). N_theta equals the commutator nullity; an empty kernel gives
 * N_theta = 0. Raises CommutingPairError for commuting inputs.
 */
SharedSubspace shared_subspace(const PauliOperator& h_a, const PauliOperator& h_b,
                               const SharedOptions& opts = {});

/**
 * Upper bound N - (||C||_HS / ||C||_2)^2 on the number of shared eigenstates
 * with C = [h_a, h_b]. Not rounded. Raises CommutingPairError when
 * ||C||_2 <= 1e-12 (bound undefined; every state is shared).
 */
double lemma1_bound(const PauliOperator& h_a, const PauliOperator& h_b);

/// Matrix of <phi_i| h |phi_j> over the basis of theta (N_theta x N_theta).
CMatrix projected_connector(const PauliOperator& h, const SharedSubspace& theta);
CMatrix projected_connector(const CMatrix& h, const CMatrix& basis);

/// Degenerate eigenspace (dimension >= 2) of the connector, with its eigenvalue.
struct SimulatableSet {
  CMatrix basis;
  double connector_eigenvalue = 0.0;

  std::size_t dimension() const { return static_cast<std::size_t>(basis.cols()); }
};

/**
 * Exactly simulatable initial-state subspaces for target h_a and simulator
 * h_b. Commuting pairs use the degenerate eigenspaces of h_b - h_a; other
 * pairs use those of the connector compressed to the joint-eigenvector block
 * of the shared subspace.
 */
std::vector<SimulatableSet> simulatable_sets(const PauliOperator& h_a, const PauliOperator& h_b,
                                             const SharedOptions& opts = {});

/// Same, for a connector restricted to a precomputed shared subspace.
std::vector<SimulatableSet> simulatable_sets(const PauliOperator& connector,
                                             const SharedSubspace& theta,
                                             const SharedOptions& opts = {});

struct Crossing {
  double coupling = 0.0;
  /// Index pairs (i < j) whose connector eigenvalues meet at `coupling`.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

struct CrossingReport {
  std::vector<Crossing> crossings;  // ascending coupling
  /// Pairs degenerate for every coupling (equal slopes and offsets).
  std::vector<std::pair<std::size_t, std::size_t>> always_degenerate;
};

/**
 * Couplings J at which J * lam_qs_unit[i] - lam_t[i] == J * lam_qs_unit[j] - lam_t[j]
 * for some i != j. Both lists must share the index correspondence of one
 * simultaneous eigenbasis. Crossings closer than dedup_tol are merged;
 * slopes or offsets within value_tol count as equal.
 */
CrossingReport find_degeneracy_crossings(std::span<const double> lam_t,
                                         std::span<const double> lam_qs_unit,
                                         double dedup_tol = 1e-9, double value_tol = 1e-9);

struct CoDiagonalized {
  SharedSubspace theta;
  RVector eigs_extra;
  RVector residual_extra;
};

/**
 * Rotates the joint-eigenvector block of theta inside its (eigs_a, eigs_b)
 * degeneracies so that `extra` is diagonal as well. `extra` must commute
 * with both operators on that block; ContractError otherwise.
 */
CoDiagonalized co_diagonalize(const SharedSubspace& theta, const PauliOperator& extra,
                              const SharedOptions& opts = {});

}  // namespace hamsim
