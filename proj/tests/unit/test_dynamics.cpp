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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hamsim/bounds.hpp"
#include "hamsim/dynamics.hpp"
#include "hamsim/random.hpp"
#include "oracle.hpp"

namespace hamsim {
namespace {

TEST(StateVector, Presets) {
  const double r3 = 1.0 / std::sqrt(3.0);
  const CVector w = StateVector::preset(StatePreset::w, 3).amplitudes();
  EXPECT_NEAR(std::abs(w(1)), r3, 1e-15);
  EXPECT_NEAR(std::abs(w(2)), r3, 1e-15);
  EXPECT_NEAR(std::abs(w(4)), r3, 1e-15);
  EXPECT_NEAR(w.norm(), 1.0, 1e-15);
  const CVector ghz = StateVector::preset(StatePreset::ghz, 3).amplitudes();
  EXPECT_NEAR(std::abs(ghz(0)), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(std::abs(ghz(7)), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(StateVector::preset(StatePreset::zero, 2).amplitudes()(0), Complex(1.0));
  EXPECT_NEAR(std::abs(StateVector::preset(StatePreset::cosdit, 2).amplitudes()(3)), 0.5, 1e-15);
  EXPECT_THROW(state_preset_from_string("bell"), DomainError);
}

TEST(StateVector, RejectsUnnormalized) {
  CVector v = CVector::Ones(4);
  EXPECT_THROW(StateVector::from_amplitudes(v), ContractError);
  EXPECT_NEAR(StateVector::normalized(v).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(StateVector::normalized(CVector::Zero(2)), DomainError);
}

TEST(Fidelity, MatchesTaylorOracle) {
  Rng rng = make_rng(30);
  std::mt19937_64 orng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h_t = random_local_operator(3, 3, Geometry::all_subsets, rng);
    const auto h_qs = random_local_operator(3, 2, Geometry::all_subsets, rng);
    const CVector psi = oracle::random_state(8, orng);
    const PairEvolution pair(h_t, h_qs);
    for (double t : {0.0, 0.2, 1.7}) {
      const double expect = oracle::fidelity(dense(h_t), dense(h_qs), psi, t);
      EXPECT_NEAR(pair.fidelity(StateVector::from_amplitudes(psi), t), expect, 1e-10);
    }
  }
}

TEST(Fidelity, DimensionMismatch) {
  const PairEvolution pair(PauliOperator::term(PauliString::parse("ZZ")),
                           PauliOperator::term(PauliString::parse("XX")));
  EXPECT_THROW(pair.fidelity(StateVector::preset(StatePreset::zero, 3), 1.0), DimensionError);
}

TEST(HullDistance, KnownConfigurations) {
  EXPECT_DOUBLE_EQ(unit_circle_hull_distance({0.3}), 1.0);
  EXPECT_NEAR(unit_circle_hull_distance({0.0, 0.5}), std::cos(0.25), 1e-15);
  EXPECT_NEAR(unit_circle_hull_distance({-0.2, 0.2, 0.1}), std::cos(0.2), 1e-15);
  EXPECT_DOUBLE_EQ(unit_circle_hull_distance({0.0, std::numbers::pi}), 0.0);
  EXPECT_DOUBLE_EQ(unit_circle_hull_distance({0.0, 2.2, 4.4}), 0.0);
  // Wrap-around: the points straddle the branch cut at pi.
  EXPECT_NEAR(unit_circle_hull_distance({3.0, -3.0}), std::cos(std::numbers::pi - 3.0), 1e-14);
}

TEST(WorstCase, BelowEverySampledState) {
  Rng rng = make_rng(32);
  std::mt19937_64 orng(33);
  const auto h_t = random_local_operator(2, 2, Geometry::all_subsets, rng, 0.3);
  const auto h_qs = random_local_operator(2, 1, Geometry::all_subsets, rng, 0.3);
  const PairEvolution pair(h_t, h_qs);
  for (double t : {0.1, 0.4}) {
    const double wc = pair.worst_case_fidelity(t);
    double sampled_min = 1.0;
    for (int s = 0; s < 2000; ++s) {
      sampled_min = std::min(sampled_min,
                             pair.fidelity(StateVector::from_amplitudes(oracle::random_state(4, orng)), t));
    }
    EXPECT_LE(wc, sampled_min + 1e-12);

    // Witness: the equal superposition of the two eigenvectors of U whose
    // phases are farthest apart attains the minimum when they span < pi.
    const Complex i(0, 1);
    const oracle::Mat u = oracle::expm(i * t * dense(h_qs)) * oracle::expm(-i * t * dense(h_t));
    Eigen::ComplexEigenSolver<oracle::Mat> es(u);
    double best = 1.0;
    for (Eigen::Index a = 0; a < 4; ++a) {
      for (Eigen::Index b = a + 1; b < 4; ++b) {
        const CVector psi = (es.eigenvectors().col(a).normalized() + es.eigenvectors().col(b).normalized()) /
                            std::sqrt(2.0);
        const CVector unit = psi / psi.norm();
        best = std::min(best, std::abs(unit.dot(u * unit)));
      }
    }
    EXPECT_NEAR(wc, best, 1e-9);
  }
}

TEST(WorstCase, RespectsTheDiameterBound) {
  Rng rng = make_rng(34);
  const auto h_t = random_local_operator(3, 3, Geometry::all_subsets, rng, 0.4);
  const auto h_qs = random_local_operator(3, 2, Geometry::all_subsets, rng, 0.4);
  const double delta = spectral_diameter(h_qs - h_t);
  for (int i = 0; i <= 20; ++i) {
    const double t = 2.0 / delta * i / 20.0;
    EXPECT_GE(worst_case_fidelity_at_t(h_t, h_qs, t), 1.0 - epsilon_star_from_diameter(delta, t) - 1e-12);
  }
  const WorstCase wc = worst_case_fidelity(h_t, h_qs, 2.0 / delta, 50);
  EXPECT_LE(wc.fidelity, worst_case_fidelity_at_t(h_t, h_qs, 2.0 / delta) + 1e-12);
}

TEST(WorstCase, HaarSamplesNeverGoBelowIt) {
  Rng rng = make_rng(36);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h_t = random_local_operator(2, 2, Geometry::all_subsets, rng);
    const auto h_qs = random_local_operator(2, 1, Geometry::all_subsets, rng);
    const double t = 0.3 + 0.2 * trial;
    const PairEvolution pair(h_t, h_qs);
    const CMatrix u = pair.propagator(t);
    const double wc = pair.worst_case_fidelity(t);
    double sampled = 1.0;
    for (int i = 0; i < 20000; ++i) {
      const CVector psi = haar_state(2, rng).amplitudes();
      sampled = std::min(sampled, std::abs(psi.dot(u * psi)));
    }
    EXPECT_GE(sampled, wc - 1e-12);
    EXPECT_LE(sampled, wc + 0.05);
  }
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  Rng rng = make_rng(35);
  const auto h_t = random_local_operator(3, 3, Geometry::all_subsets, rng);
  const auto h_qs = random_local_operator(3, 2, Geometry::all_subsets, rng);
  const StateVector psi = haar_state(3, rng);
  std::vector<double> times;
  for (int i = 0; i < 40; ++i) times.push_back(0.05 * i);
  const FidelityCurve a = fidelity_sweep(h_t, h_qs, psi, times, 1);
  const FidelityCurve b = fidelity_sweep(h_t, h_qs, psi, times, 4);
  EXPECT_EQ(a.fidelities, b.fidelities);
  EXPECT_EQ(a.bound_curve, b.bound_curve);
  EXPECT_THROW(fidelity_sweep(h_t, h_qs, psi, {0.5, 0.1}), DomainError);
  EXPECT_THROW(fidelity_sweep(h_t, h_qs, psi, {-0.5}), DomainError);
}

}  // namespace
}  // namespace hamsim
