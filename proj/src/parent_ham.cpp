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

#include "hamsim/parent_ham.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "hamsim/errors.hpp"

namespace hamsim {

namespace {

std::size_t log2_dim(std::size_t dim) {
  return static_cast<std::size_t>(std::countr_zero(dim));
}

}  // namespace

CorrelationMatrix correlation_matrix(const StateVector& psi,
                                     const std::vector<PauliString>& generators,
                                     std::size_t block_split) {
  const std::size_t n = log2_dim(psi.dimension());
  for (const auto& g : generators) {
    if (g.n_sites() != n) {
      throw DimensionError("correlation_matrix: generator " + g.str() + " does not match a " +
                           std::to_string(n) + "-site state");
    }
  }
  if (block_split > generators.size()) throw DimensionError("block split beyond generator count");
  const auto m = static_cast<Eigen::Index>(generators.size());
  std::vector<CVector> images;
  images.reserve(generators.size());
  RVector mean(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    images.push_back(apply(generators[static_cast<std::size_t>(i)], psi.amplitudes()));
    mean(i) = psi.amplitudes().dot(images.back()).real();
  }
  RMatrix entries(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
      const double v = images[ii].dot(images[jj]).real() - mean(i) * mean(j);
      entries(i, j) = entries(j, i) = v;
    }
  }
  return {generators, std::move(entries), block_split};
}

ParentReport parent_exists(const StateVector& psi, const std::vector<PauliString>& generators,
                           double tol) {
  ParentReport report;
  if (generators.empty()) return report;
  const CorrelationMatrix m = correlation_matrix(psi, generators);
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(m.entries);
  const RVector& w = solver.eigenvalues();
  report.min_eigenvalue = w(0);
  report.exists = w(0) <= tol;
  const std::size_t n = log2_dim(psi.dimension());
  for (Eigen::Index i = 0; i < w.size() && w(i) <= tol; ++i) {
    RVector v = solver.eigenvectors().col(i);
    const PauliOperator h = combine(n, generators, std::span<const double>(v.data(), v.size()));
    const CVector hpsi = apply(h, psi.amplitudes());
    const Complex mean = psi.amplitudes().dot(hpsi);
    report.residuals.push_back((hpsi - mean * psi.amplitudes()).norm());
    report.kernel.push_back(std::move(v));
  }
  return report;
}

namespace {

RMatrix submatrix(const RMatrix& m, unsigned rows, unsigned cols) {
  const int r = std::popcount(rows), c = std::popcount(cols);
  RMatrix out(r, c);
  int oi = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!(rows >> i & 1u)) continue;
    int oj = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (cols >> j & 1u) out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

double det(const RMatrix& m) {
  if (m.rows() == 0) return 1.0;
  return m.fullPivLu().determinant();
}

int index_sum(unsigned mask) {
  int s = 0;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) s += i;
  }
  return s;
}

}  // namespace

DetSumCheck det_sum_identity_check(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("det_sum_identity_check needs two square matrices of equal size");
  }
  const auto n = static_cast<unsigned>(a.rows());
  if (n > kMaxMinorDimension) {
    throw CapacityError("det_sum_identity_check supports N <= 8, got " + std::to_string(n));
  }
  const unsigned full = (1u << n) - 1u;
  // Group subsets by size so each (alpha, beta) pair with |alpha| = |beta| = r is visited once.
  std::vector<std::vector<unsigned>> by_size(n + 1);
  for (unsigned mask = 0; mask <= full; ++mask) by_size[static_cast<unsigned>(std::popcount(mask))].push_back(mask);
  DetSumCheck out;
  for (unsigned r = 1; r < n; ++r) {
    for (unsigned alpha : by_size[r]) {
      for (unsigned beta : by_size[r]) {
        const double term = det(submatrix(a, alpha, beta)) *
                            det(submatrix(b, full & ~alpha, full & ~beta));
        out.lhs += ((index_sum(alpha) + index_sum(beta)) % 2 == 0) ? term : -term;
      }
    }
  }
  out.rhs = det(a + b) - det(a) - det(b);
  return out;
}

NecessaryConditionReport necessary_condition_check(const StateVector& psi,
                                                   const std::vector<PauliString>& k_block,
                                                   const std::vector<PauliString>& kprime_block,
                                                   double tol) {
  if (k_block.empty() || kprime_block.empty()) {
    throw DomainError("necessary_condition_check needs nonempty k and k' blocks");
  }
  if (kprime_block.size() > kMaxMinorDimension) {
    throw CapacityError("k'-block has " + std::to_string(kprime_block.size()) +
                        " generators; the minor sum supports at most 8");
  }
  std::vector<PauliString> all = k_block;
  all.insert(all.end(), kprime_block.begin(), kprime_block.end());
  const CorrelationMatrix m = correlation_matrix(psi, all, k_block.size());
  const auto nk = static_cast<Eigen::Index>(k_block.size());
  const auto np = static_cast<Eigen::Index>(kprime_block.size());
  const RMatrix m_kk = m.entries.topLeftCorner(nk, nk);
  const RMatrix m_kp = m.entries.topRightCorner(nk, np);
  const RMatrix m_pp = m.entries.bottomRightCorner(np, np);

  Eigen::SelfAdjointEigenSolver<RMatrix> kk(m_kk, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, kk.eigenvalues().cwiseAbs().maxCoeff());
  if (kk.eigenvalues()(0) <= 1e-10 * scale) {
    throw ContractError("k-body correlation block is singular (min eigenvalue " +
                        std::to_string(kk.eigenvalues()(0)) + ")");
  }
  const RMatrix b = -m_kp.transpose() * m_kk.ldlt().solve(m_kp);
  const DetSumCheck sums = det_sum_identity_check(m_pp, b);

  NecessaryConditionReport report;
  report.lhs = sums.lhs;
  report.rhs = -det(b);
  report.abs_diff = std::abs(report.lhs - report.rhs);
  report.condition_met =
      report.abs_diff <= tol * std::max({1.0, std::abs(report.lhs), std::abs(report.rhs)});
  report.dim_kk = k_block.size();
  report.dim_kpkp = kprime_block.size();
  return report;
}

NecessaryConditionReport necessary_condition_check(const StateVector& psi, std::size_t k,
                                                   std::size_t k_prime, Geometry geometry,
                                                   double tol) {
  if (k_prime == 0 || k_prime >= k) throw DomainError("necessary_condition_check requires 1 <= k' < k");
  const std::size_t n = log2_dim(psi.dimension());
  if (k > n) throw DomainError("locality exceeds system size");
  return necessary_condition_check(psi, interaction_generators(n, k_prime + 1, k, geometry),
                                   interaction_generators(n, 1, k_prime, geometry), tol);
}

}  // namespace hamsim
