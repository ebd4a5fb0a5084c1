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

#include "hamsim/shared_eigs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>

namespace hamsim {

namespace {

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Refinement: diagonalize ops[0] compressed to span(q); inside
// each degenerate cluster recurse with the remaining operators.
CMatrix rotate_jointly(const CMatrix& q, std::span<const CMatrix> ops, std::span<const double> tols) {
  if (q.cols() == 0 || ops.empty()) return q;
  const EigenSystem es = eigensystem(hermitian_part(q.adjoint() * ops[0] * q));
  CMatrix rotated = q * es.eigenvectors;
  if (ops.size() == 1) return rotated;
  for (const auto& cluster : cluster_degeneracies(es.eigenvalues, tols[0]).clusters) {
    if (cluster.size() < 2) continue;
    const auto first = static_cast<Eigen::Index>(cluster.front());
    const auto width = static_cast<Eigen::Index>(cluster.size());
    CMatrix block = rotated.middleCols(first, width);
    rotated.middleCols(first, width) = rotate_jointly(block, ops.subspan(1), tols.subspan(1));
  }
  return rotated;
}

void rayleigh(const CMatrix& basis, const CMatrix& h, RVector& eigs, RVector& residuals) {
  const CMatrix hv = h * basis;
  eigs.resize(basis.cols());
  residuals.resize(basis.cols());
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    eigs(c) = basis.col(c).dot(hv.col(c)).real();
    residuals(c) = (hv.col(c) - eigs(c) * basis.col(c)).norm();
  }
}

SharedSubspace make_subspace(CMatrix basis, const CMatrix& a, const CMatrix& b,
                             std::size_t common_dim) {
  SharedSubspace out;
  out.basis = std::move(basis);
  rayleigh(out.basis, a, out.eigs_a, out.residual_a);
  rayleigh(out.basis, b, out.eigs_b, out.residual_b);
  out.common_dim = common_dim;
  return out;
}

double degeneracy_tol(const SharedOptions& opts, double norm) {
  return opts.degeneracy_tol > 0.0 ? opts.degeneracy_tol : default_degeneracy_tolerance(norm);
}

// Largest subspace of span(w) mapped into itself by both a and b.
CMatrix largest_invariant_subspace(CMatrix w, const CMatrix& a, const CMatrix& b, double tol) {
  while (w.cols() > 0) {
    const Eigen::Index d = w.cols();
    CMatrix leak(2 * w.rows(), d);
    const CMatrix aw = a * w, bw = b * w;
    leak.topRows(w.rows()) = aw - w * (w.adjoint() * aw);
    leak.bottomRows(w.rows()) = bw - w * (w.adjoint() * bw);
    Eigen::JacobiSVD<CMatrix> svd(leak, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol) ++rank;
    if (rank == 0) break;
    w = w * svd.matrixV().rightCols(d - rank);
  }
  return w;
}

// Orthonormal basis of span(k) minus span(w), with w orthonormal inside span(k).
CMatrix complement_within(const CMatrix& k, const CMatrix& w) {
  const Eigen::Index extra = k.cols() - w.cols();
  if (extra <= 0) return CMatrix(k.rows(), 0);
  const CMatrix residual = k - w * (w.adjoint() * k);
  Eigen::JacobiSVD<CMatrix> svd(residual, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(extra);
}

}  // namespace

SharedSubspace SharedSubspace::common() const {
  const auto d = static_cast<Eigen::Index>(common_dim);
  SharedSubspace out;
  out.basis = basis.leftCols(d);
  out.eigs_a = eigs_a.head(d);
  out.eigs_b = eigs_b.head(d);
  out.residual_a = residual_a.head(d);
  out.residual_b = residual_b.head(d);
  out.common_dim = common_dim;
  return out;
}

SharedSubspace simultaneous_eigenbasis(const PauliOperator& h_a, const PauliOperator& h_b,
                                       const SharedOptions& opts) {
  if (h_a.n_sites() != h_b.n_sites()) throw DimensionError("simultaneous_eigenbasis: site counts differ");
  if (!commute(h_a, h_b)) {
    throw ContractError(
        "simultaneous_eigenbasis: operators do not commute; use shared_subspace instead");
  }
  const CMatrix a = dense(h_a), b = dense(h_b);
  const CMatrix ops[2] = {a, b};
  const double tols[2] = {degeneracy_tol(opts, spectral_norm(a)), degeneracy_tol(opts, spectral_norm(b))};
  const CMatrix identity = CMatrix::Identity(a.rows(), a.cols());
  CMatrix basis = rotate_jointly(identity, ops, tols);
  return make_subspace(std::move(basis), a, b, static_cast<std::size_t>(a.rows()));
}

SharedSubspace shared_subspace(const PauliOperator& h_a, const PauliOperator& h_b,
                               const SharedOptions& opts) {
  if (h_a.n_sites() != h_b.n_sites()) throw DimensionError("shared_subspace: site counts differ");
  const ComplexPauliSum c = commutator(h_a, h_b);
  if (c.is_zero()) {
    throw CommutingPairError("shared_subspace: operators commute; use simultaneous_eigenbasis");
  }
  const CMatrix a = dense(h_a), b = dense(h_b);
  const CMatrix kernel = kernel_basis(dense(c), opts.kernel_tol);
  if (kernel.cols() == 0) return make_subspace(kernel, a, b, 0);

  const double na = spectral_norm(a), nb = spectral_norm(b);
  const double leak_tol = opts.residual_tol * std::max({1.0, na, nb});
  const CMatrix invariant = largest_invariant_subspace(kernel, a, b, leak_tol);

  const CMatrix ops[2] = {a, b};
  const double tols[2] = {degeneracy_tol(opts, na), degeneracy_tol(opts, nb)};
  const CMatrix joint = rotate_jointly(invariant, ops, tols);
  const CMatrix rest = rotate_jointly(complement_within(kernel, invariant), ops, tols);

  CMatrix basis(kernel.rows(), joint.cols() + rest.cols());
  basis << joint, rest;
  return make_subspace(std::move(basis), a, b, static_cast<std::size_t>(joint.cols()));
}

double lemma1_bound(const PauliOperator& h_a, const PauliOperator& h_b) {
  const ComplexPauliSum c = commutator(h_a, h_b);
  // A single Pauli string has unit spectral norm, so that case needs no diagonalization.
  const double op_norm =
      c.terms().size() == 1 ? std::abs(c.terms().begin()->second) : spectral_norm(c);
  if (op_norm <= 1e-12) {
    throw CommutingPairError("lemma1_bound: commutator vanishes; bound undefined, r = N");
  }
  double weight = 0.0;
  for (const auto& [s, v] : c.terms()) weight += std::norm(v);
  const double dim = std::ldexp(1.0, static_cast<int>(h_a.n_sites()));
  return dim - dim * weight / (op_norm * op_norm);
}

CMatrix projected_connector(const CMatrix& h, const CMatrix& basis) {
  if (basis.cols() == 0) return CMatrix(0, 0);
  if (basis.rows() != h.rows()) throw DimensionError("projected_connector: dimension mismatch");
  return hermitian_part(basis.adjoint() * h * basis);
}

CMatrix projected_connector(const PauliOperator& h, const SharedSubspace& theta) {
  if (theta.dimension() == 0) return CMatrix(0, 0);
  return projected_connector(dense(h), theta.basis);
}

std::vector<SimulatableSet> simulatable_sets(const PauliOperator& connector,
                                             const SharedSubspace& theta,
                                             const SharedOptions& opts) {
  std::vector<SimulatableSet> out;
  const SharedSubspace joint = theta.common();
  if (joint.dimension() < 2) return out;
  const CMatrix h = dense(connector);
  const EigenSystem es = eigensystem(projected_connector(h, joint.basis));
  const double tol = degeneracy_tol(opts, spectral_norm(h));
  for (const auto& cluster : cluster_degeneracies(es.eigenvalues, tol).clusters) {
    if (cluster.size() < 2) continue;
    const auto first = static_cast<Eigen::Index>(cluster.front());
    const auto width = static_cast<Eigen::Index>(cluster.size());
    out.push_back({joint.basis * es.eigenvectors.middleCols(first, width),
                   es.eigenvalues.segment(first, width).mean()});
  }
  return out;
}

std::vector<SimulatableSet> simulatable_sets(const PauliOperator& h_a, const PauliOperator& h_b,
                                             const SharedOptions& opts) {
  if (h_a.n_sites() != h_b.n_sites()) throw DimensionError("simulatable_sets: site counts differ");
  const PauliOperator connector = h_b - h_a;
  if (!commute(h_a, h_b)) {
    return simulatable_sets(connector, shared_subspace(h_a, h_b, opts), opts);
  }
  std::vector<SimulatableSet> out;
  const EigenSystem es = eigensystem(connector);
  const double norm = es.eigenvalues.size() ? es.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  for (const auto& cluster : cluster_degeneracies(es, degeneracy_tol(opts, norm)).clusters) {
    if (cluster.size() < 2) continue;
    const auto first = static_cast<Eigen::Index>(cluster.front());
    const auto width = static_cast<Eigen::Index>(cluster.size());
    out.push_back({es.eigenvectors.middleCols(first, width),
                   es.eigenvalues.segment(first, width).mean()});
  }
  return out;
}

CrossingReport find_degeneracy_crossings(std::span<const double> lam_t,
                                         std::span<const double> lam_qs_unit, double dedup_tol,
                                         double value_tol) {
  if (lam_t.size() != lam_qs_unit.size()) {
    throw DimensionError("find_degeneracy_crossings: eigenvalue lists differ in length");
  }
  double scale = 1.0;
  for (double v : lam_t) scale = std::max(scale, std::abs(v));
  for (double v : lam_qs_unit) scale = std::max(scale, std::abs(v));
  const double eq = value_tol * scale;

  CrossingReport report;
  std::vector<Crossing> raw;
  for (std::size_t i = 0; i < lam_t.size(); ++i) {
    for (std::size_t j = i + 1; j < lam_t.size(); ++j) {
      const double slope = lam_qs_unit[i] - lam_qs_unit[j];
      const double offset = lam_t[i] - lam_t[j];
      if (std::abs(slope) <= eq) {
        if (std::abs(offset) <= eq) report.always_degenerate.emplace_back(i, j);
        continue;
      }
      raw.push_back({offset / slope, {{i, j}}});
    }
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Crossing& x, const Crossing& y) { return x.coupling < y.coupling; });
  for (auto& c : raw) {
    if (!report.crossings.empty() &&
        std::abs(c.coupling - report.crossings.back().coupling) <= dedup_tol) {
      auto& pairs = report.crossings.back().pairs;
      pairs.insert(pairs.end(), c.pairs.begin(), c.pairs.end());
    } else {
      report.crossings.push_back(std::move(c));
    }
  }
  for (auto& c : report.crossings) std::sort(c.pairs.begin(), c.pairs.end());
  return report;
}

CoDiagonalized co_diagonalize(const SharedSubspace& theta, const PauliOperator& extra,
                              const SharedOptions& opts) {
  const SharedSubspace joint = theta.common();
  const auto d = static_cast<Eigen::Index>(joint.dimension());
  const CMatrix e = dense(extra);
  if (d > 0 && e.rows() != joint.basis.rows()) throw DimensionError("co_diagonalize: dimension mismatch");

  const double norm_scale = std::max({1.0, joint.eigs_a.cwiseAbs().maxCoeff(),
                                      joint.eigs_b.cwiseAbs().maxCoeff()});
  const double tol = degeneracy_tol(opts, norm_scale);

  // Group columns whose (eigs_a, eigs_b) pairs coincide.
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      if (std::abs(joint.eigs_a(i) - joint.eigs_a(j)) <= tol &&
          std::abs(joint.eigs_b(i) - joint.eigs_b(j)) <= tol) {
        parent[find(j)] = find(i);
      }
    }
  }

  CoDiagonalized out;
  out.theta = joint;
  for (Eigen::Index root = 0; root < d; ++root) {
    std::vector<Eigen::Index> members;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (find(i) == root) members.push_back(i);
    }
    if (members.size() < 2) continue;
    CMatrix block(joint.basis.rows(), static_cast<Eigen::Index>(members.size()));
    for (std::size_t m = 0; m < members.size(); ++m) {
      block.col(static_cast<Eigen::Index>(m)) = joint.basis.col(members[m]);
    }
    const EigenSystem es = eigensystem(hermitian_part(block.adjoint() * e * block));
    const CMatrix rotated = block * es.eigenvectors;
    for (std::size_t m = 0; m < members.size(); ++m) {
      out.theta.basis.col(members[m]) = rotated.col(static_cast<Eigen::Index>(m));
    }
  }
  // eigs_a / eigs_b and their residuals carry over: each rotation stays inside
  // a joint eigenspace of both operators.
  rayleigh(out.theta.basis, e, out.eigs_extra, out.residual_extra);
  const double limit = opts.residual_tol * std::max(1.0, spectral_norm(e));
  for (Eigen::Index c = 0; c < d; ++c) {
    if (out.residual_extra(c) > limit) {
      throw ContractError("co_diagonalize: extra operator is not diagonalizable on the shared block");
    }
  }
  return out;
}

}  // namespace hamsim
