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

// Library-facing helpers for tests: random operator pairs with a prescribed
// number of shared eigenvectors, built densely and decomposed back.

#include <random>
#include <utility>

#include "hamsim/pauli.hpp"
#include "oracle.hpp"

namespace fixtures {

inline hamsim::PauliOperator from_matrix(const oracle::Mat& m, int n) {
  hamsim::PauliOperator op(static_cast<std::size_t>(n));
  for (const auto& [s, c] : oracle::decompose(m, n)) op.add_term(hamsim::PauliString::parse(s), c);
  return op;
}

/// A pair sharing exactly r eigenvectors: both diagonal in the first r
/// columns of a random unitary, generic elsewhere.
inline std::pair<hamsim::PauliOperator, hamsim::PauliOperator> pair_with_shared(int n, int r,
                                                                                std::mt19937_64& rng) {
  const int dim = 1 << n;
  std::normal_distribution<double> normal;
  const oracle::Mat v = oracle::random_unitary(dim, rng);
  oracle::Mat a = oracle::Mat::Zero(dim, dim), b = oracle::Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) a(i, i) = normal(rng);
  for (int i = 0; i < r; ++i) b(i, i) = normal(rng);
  oracle::Mat g(dim - r, dim - r);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = oracle::Complex(normal(rng), normal(rng));
  b.bottomRightCorner(dim - r, dim - r) = (g + g.adjoint()) / 2.0;
  return {from_matrix(v * a * v.adjoint(), n), from_matrix(v * b * v.adjoint(), n)};
}

}  // namespace fixtures
