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

#include "hamsim/pauli.hpp"

namespace hamsim {

/**
 * Full spectral decomposition of a Hermitian matrix: ascending eigenvalues
 * and orthonormal eigenvectors stored as columns in the same order. Each
 * eigenvector's first significant component is real and positive.
 */
struct EigenSystem {
  RVector eigenvalues;
  CMatrix eigenvectors;

  std::size_t dimension() const { return static_cast<std::size_t>(eigenvalues.size()); }
  /// V diag(lambda) V^dagger.
  CMatrix reconstruct() const;
};

EigenSystem eigensystem(const CMatrix& hermitian);
EigenSystem eigensystem(const PauliOperator& h, const DenseOptions& opts = {});

/// exp(sign * i * t * H) from a precomputed decomposition.
CMatrix evolve(const EigenSystem& es, double t, int sign);
CMatrix evolve(const PauliOperator& h, double t, int sign, const DenseOptions& opts = {});

/// lambda_max - lambda_min.
double spectral_diameter(const EigenSystem& es);
double spectral_diameter(const PauliOperator& h, const DenseOptions& opts = {});

/// 1e-8 * max(1, ||h||_2).
double default_degeneracy_tolerance(double spectral_norm);

/**
 * Groups of eigenvalue indices. Adjacent (ascending) eigenvalues whose gap is
 * at most `tolerance` share a cluster; a larger gap starts a new one.
 */
struct DegeneracyClusters {
  std::vector<std::vector<std::size_t>> clusters;
  double tolerance = 0.0;

  std::size_t max_size() const;
};

DegeneracyClusters cluster_degeneracies(const RVector& ascending_values, double tol);
DegeneracyClusters cluster_degeneracies(const EigenSystem& es, double tol);

inline constexpr double kDefaultKernelTolerance = 1e-9;

/**
 * Orthonormal columns spanning the eigenvectors of i*m whose eigenvalue has
 * magnitude at most tol * ||m||_2. An exactly zero m raises
 * CommutingPairError instead of returning the whole space.
 */
CMatrix kernel_basis(const CMatrix& anti_hermitian, double tol = kDefaultKernelTolerance);

}  // namespace hamsim
