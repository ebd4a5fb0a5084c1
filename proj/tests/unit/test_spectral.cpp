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

#include <random>

#include <gtest/gtest.h>

#include "hamsim/models.hpp"
#include "hamsim/spectral.hpp"
#include "oracle.hpp"

namespace hamsim {
namespace {

CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = Complex(normal(rng), normal(rng));
  return (g + g.adjoint()) / 2.0;
}

TEST(Eigensystem, ReconstructsAndOrdersAscending) {
  std::mt19937_64 rng(6);
  const CMatrix h = random_hermitian(12, rng);
  const EigenSystem es = eigensystem(h);
  EXPECT_LT((es.reconstruct() - h).norm(), 1e-12);
  for (Eigen::Index i = 1; i < es.eigenvalues.size(); ++i) {
    EXPECT_LE(es.eigenvalues(i - 1), es.eigenvalues(i));
  }
  EXPECT_LT((es.eigenvectors.adjoint() * es.eigenvectors - CMatrix::Identity(12, 12)).norm(), 1e-12);
}

TEST(Eigensystem, PhaseFixing) {
  std::mt19937_64 rng(7);
  const EigenSystem es = eigensystem(random_hermitian(8, rng));
  for (Eigen::Index c = 0; c < es.eigenvectors.cols(); ++c) {
    const CVector v = es.eigenvectors.col(c);
    Eigen::Index first = 0;
    while (std::abs(v(first)) < 1e-8) ++first;
    EXPECT_GT(v(first).real(), 0.0);
    EXPECT_NEAR(v(first).imag(), 0.0, 1e-14);
  }
}

TEST(Eigensystem, RejectsNonHermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigensystem(m), IntegrityError);
}

TEST(Eigensystem, DenseLimit) {
  DenseOptions tight;
  tight.max_sites = 3;
  EXPECT_THROW(eigensystem(xxx_ring(4, 1.0), tight), CapacityError);
}

TEST(Evolve, MatchesTaylorOracle) {
  std::mt19937_64 rng(8);
  const CMatrix h = random_hermitian(8, rng);
  const EigenSystem es = eigensystem(h);
  for (double t : {0.0, 0.3, 2.5}) {
    const Complex i(0, 1);
    EXPECT_LT((evolve(es, t, -1) - oracle::expm(-i * t * h)).norm(), 1e-10);
    EXPECT_LT((evolve(es, t, +1) - oracle::expm(i * t * h)).norm(), 1e-10);
  }
}

TEST(SpectralDiameter, KnownValues) {
  const auto z = PauliOperator::term(PauliString::parse("ZI"), 1.5);
  EXPECT_NEAR(spectral_diameter(z), 3.0, 1e-14);
  EXPECT_NEAR(spectral_diameter(PauliOperator::identity(2, 4.0)), 0.0, 1e-14);
}

TEST(Clusters, GapBasedGrouping) {
  RVector v(6);
  v << -1.0, -1.0 + 1e-12, 0.0, 2.0, 2.0, 2.0 + 5e-9;
  const auto c = cluster_degeneracies(v, 1e-8);
  ASSERT_EQ(c.clusters.size(), 3u);
  EXPECT_EQ(c.clusters[0].size(), 2u);
  EXPECT_EQ(c.clusters[1].size(), 1u);
  EXPECT_EQ(c.max_size(), 3u);
  EXPECT_DOUBLE_EQ(default_degeneracy_tolerance(0.5), 1e-8);
  EXPECT_DOUBLE_EQ(default_degeneracy_tolerance(10.0), 1e-7);
}

TEST(KernelBasis, Contracts) {
  EXPECT_THROW(kernel_basis(CMatrix::Zero(4, 4)), CommutingPairError);
  CMatrix herm = CMatrix::Identity(2, 2);
  EXPECT_THROW(kernel_basis(herm), ContractError);
  // i * diag(1, 0, 0, -2) has a two-dimensional kernel.
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = Complex(0, 1);
  m(3, 3) = Complex(0, -2);
  const CMatrix k = kernel_basis(m);
  EXPECT_EQ(k.cols(), 2);
  EXPECT_LT((m * k).norm(), 1e-14);
}

}  // namespace
}  // namespace hamsim
