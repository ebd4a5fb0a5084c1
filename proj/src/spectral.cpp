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

#include "hamsim/spectral.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace hamsim {

namespace {

void fix_phases(CMatrix& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    const double scale = v.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      const double mag = std::abs(v(r, c));
      if (mag > 1e-8 * scale) {
        v.col(c) *= std::conj(v(r, c)) / mag;
        break;
      }
    }
  }
}

}  // namespace

CMatrix EigenSystem::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

EigenSystem eigensystem(const CMatrix& hermitian) {
  if (hermitian.rows() != hermitian.cols()) throw DimensionError("eigensystem: matrix not square");
  if (hermitian.size() == 0) return {};
  const double scale = std::max(1.0, hermitian.cwiseAbs().maxCoeff());
  if ((hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw IntegrityError("eigensystem: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) throw IntegrityError("eigensystem: solver did not converge");
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(es.eigenvectors);
  return es;
}

EigenSystem eigensystem(const PauliOperator& h, const DenseOptions& opts) {
  return eigensystem(dense(h, opts));
}

CMatrix evolve(const EigenSystem& es, double t, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("evolve: sign must be +1 or -1");
  CVector phases(es.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, sign * t * es.eigenvalues(i));
  }
  return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

CMatrix evolve(const PauliOperator& h, double t, int sign, const DenseOptions& opts) {
  return evolve(eigensystem(h, opts), t, sign);
}

double spectral_diameter(const EigenSystem& es) {
  if (es.eigenvalues.size() == 0) return 0.0;
  return es.eigenvalues(es.eigenvalues.size() - 1) - es.eigenvalues(0);
}

double spectral_diameter(const PauliOperator& h, const DenseOptions& opts) {
  if (h.is_zero()) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(dense(h, opts), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return ev(ev.size() - 1) - ev(0);
}

double default_degeneracy_tolerance(double spectral_norm) {
  return 1e-8 * std::max(1.0, spectral_norm);
}

std::size_t DegeneracyClusters::max_size() const {
  std::size_t m = 0;
  for (const auto& c : clusters) m = std::max(m, c.size());
  return m;
}

DegeneracyClusters cluster_degeneracies(const RVector& values, double tol) {
  if (!(tol > 0.0)) throw DomainError("cluster_degeneracies: tolerance must be positive");
  DegeneracyClusters out{{}, tol};
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0 && values(i) < values(i - 1)) {
      throw ContractError("cluster_degeneracies: eigenvalues must be ascending");
    }
    if (i == 0 || values(i) - values(i - 1) > tol) out.clusters.emplace_back();
    out.clusters.back().push_back(static_cast<std::size_t>(i));
  }
  return out;
}

DegeneracyClusters cluster_degeneracies(const EigenSystem& es, double tol) {
  return cluster_degeneracies(es.eigenvalues, tol);
}

CMatrix kernel_basis(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("kernel_basis: matrix not square");
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    throw CommutingPairError(
        "kernel_basis: matrix is exactly zero (commuting pair); use simultaneous_eigenbasis");
  }
  if ((m + m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, scale)) {
    throw ContractError("kernel_basis: matrix is not anti-Hermitian");
  }
  const CMatrix herm = Complex(0, 1) * m;
  EigenSystem es = eigensystem(CMatrix(0.5 * (herm + herm.adjoint())));
  const double norm = es.eigenvalues.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i) {
    if (std::abs(es.eigenvalues(i)) <= tol * norm) keep.push_back(i);
  }
  CMatrix basis(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors.col(keep[c]);
  }
  return basis;
}

}  // namespace hamsim
