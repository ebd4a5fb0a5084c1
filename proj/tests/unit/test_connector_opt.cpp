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

#include "hamsim/bounds.hpp"
#include "hamsim/connector_opt.hpp"
#include "hamsim/random.hpp"
#include "hamsim/spectral.hpp"
#include "oracle.hpp"

namespace hamsim {
namespace {

TEST(Ansatz, GeneratorsAndFloor) {
  const SimulatorAnsatz a = make_ansatz(5, 2, Geometry::chain_periodic, 0.01);
  EXPECT_EQ(a.generators.size(), 60u);
  EXPECT_EQ(a.floor_set.size(), 45u);
  for (std::size_t i : a.floor_set) EXPECT_EQ(a.generators[i].locality(), 2u);
  EXPECT_DOUBLE_EQ(a.floor_value(), 0.01);
  const SimulatorAnsatz none = make_ansatz(5, 2, Geometry::chain_periodic, 0.01,
                                           BetaConvention::coefficient, FloorMode::none);
  EXPECT_TRUE(none.floor_set.empty());
  const SimulatorAnsatz tr = make_ansatz(5, 2, Geometry::chain_periodic, 0.32, BetaConvention::trace);
  EXPECT_DOUBLE_EQ(tr.floor_value(), 0.01);
}

TEST(Ansatz, Contracts) {
  EXPECT_THROW(make_ansatz(3, 2, Geometry::all_subsets, -0.1), DomainError);
  EXPECT_THROW(make_ansatz(3, 4, Geometry::all_subsets, 0.0), DomainError);
  SimulatorAnsatz empty;
  empty.n_sites = 2;
  empty.k_prime = 1;
  EXPECT_THROW(minimize_diameter(PauliOperator::term(PauliString::parse("ZZ")), empty), DomainError);
  SimulatorAnsatz bad = make_ansatz(3, 1, Geometry::all_subsets, 0.0);
  bad.generators.push_back(PauliString::parse("XXI"));
  EXPECT_THROW(bad.validate(), ContractError);
}

TEST(Diameter, ObjectiveAndSubgradient) {
  Rng rng = make_rng(40);
  const auto target = random_local_operator(3, 3, Geometry::all_subsets, rng);
  const auto gens = interaction_generators(3, 1, 2, Geometry::all_subsets);
  const DiameterProblem problem(target, gens);
  std::normal_distribution<double> normal;
  RVector c(static_cast<Eigen::Index>(gens.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
  const std::vector<double> cv(c.data(), c.data() + c.size());
  const double f = diameter_objective(target, gens, cv);
  EXPECT_NEAR(f, spectral_diameter(combine(3, gens, cv) - target), 1e-10);
  RVector g;
  EXPECT_NEAR(problem.value_and_subgradient(c, g, 1e-6), f, 1e-12);
  // Subgradient inequality f(c + d) >= f(c) + g.d.
  for (int trial = 0; trial < 20; ++trial) {
    RVector d(c.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = 0.1 * normal(rng);
    EXPECT_GE(problem.value(c + d), f + g.dot(d) - 1e-9);
  }
}

TEST(Diameter, ConvexityProbe) {
  Rng rng = make_rng(41);
  const auto target = build_z_chain_target(4, 3, true);
  const auto gens = interaction_generators(4, 1, 2, Geometry::chain_periodic);
  const DiameterProblem problem(target, gens);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    RVector c1(static_cast<Eigen::Index>(gens.size())), c2(c1.size());
    for (Eigen::Index i = 0; i < c1.size(); ++i) {
      c1(i) = normal(rng);
      c2(i) = normal(rng);
    }
    const double th = unit(rng);
    EXPECT_LE(problem.value(th * c1 + (1 - th) * c2),
              th * problem.value(c1) + (1 - th) * problem.value(c2) + 1e-9);
  }
}

TEST(Diameter, ExpressibleTargetReachesZero) {
  const auto target = PauliOperator::term(PauliString::parse("ZZI"), 0.5) +
                      PauliOperator::term(PauliString::parse("IXX"), 0.3) +
                      PauliOperator::term(PauliString::parse("ZII"), -0.2);
  const SimulatorAnsatz a = make_ansatz(3, 2, Geometry::chain_open, 0.0);
  DiameterOptions opts;
  opts.restarts = 2;
  opts.seed = 1;
  opts.stall_tol = 1e-9;
  opts.max_iterations = 20000;
  const OptimizationResult r = minimize_diameter(target, a, opts);
  EXPECT_LT(r.objective, 1e-6);
  EXPECT_NEAR(spectral_diameter(r.simulator(3) - target), r.objective, 1e-12);
}

TEST(Diameter, FloorAndLocalityInvariants) {
  const auto target = build_z_chain_target(4, 4, true);
  const SimulatorAnsatz a = make_ansatz(4, 2, Geometry::chain_periodic, 0.05);
  DiameterOptions opts;
  opts.restarts = 2;
  opts.max_iterations = 400;
  opts.seed = 3;
  const OptimizationResult r = minimize_diameter(target, a, opts);
  for (std::size_t i : a.floor_set) EXPECT_GE(r.coefficients[i], 0.05 - 1e-9);
  EXPECT_GE(r.objective, 0.0);
  const PauliOperator h_qs = r.simulator(4);
  for (const auto& s : generate_interaction_basis(4, 3, Geometry::all_subsets).generators) {
    EXPECT_DOUBLE_EQ(trace_inner_product(h_qs, PauliOperator::term(s)), 0.0);
  }
  EXPECT_EQ(r.restart_objectives.size(), 2u);
}

TEST(Diameter, DeterministicAcrossThreads) {
  const auto target = build_z_chain_target(4, 3, true);
  const SimulatorAnsatz a = make_ansatz(4, 2, Geometry::chain_periodic, 0.01);
  DiameterOptions opts;
  opts.restarts = 3;
  opts.max_iterations = 300;
  opts.seed = 9;
  const OptimizationResult one = minimize_diameter(target, a, opts);
  opts.threads = 3;
  const OptimizationResult three = minimize_diameter(target, a, opts);
  EXPECT_EQ(one.coefficients, three.coefficients);
  EXPECT_EQ(one.restart_objectives, three.restart_objectives);
}

TEST(Diameter, SmallTimeBoundMatchesObjective) {
  const auto target = build_z_chain_target(4, 3, true);
  const SimulatorAnsatz a = make_ansatz(4, 2, Geometry::chain_periodic, 0.01);
  DiameterOptions opts;
  opts.restarts = 2;
  opts.seed = 5;
  const OptimizationResult r = minimize_diameter(target, a, opts);
  for (double t : {1e-3, 1e-2}) {
    EXPECT_NEAR(epsilon_star(target, r.simulator(4), t), t * r.objective / 2.0, 1e-12);
  }
}

class FixedBackend : public DiameterBackend {
 public:
  explicit FixedBackend(double value) : value_(value) {}
  OptimizationResult solve(const PauliOperator&, const SimulatorAnsatz& ansatz,
                           const DiameterOptions&) const override {
    OptimizationResult r;
    r.generators = ansatz.generators;
    r.coefficients.assign(ansatz.generators.size(), value_);
    r.converged = true;
    return r;
  }

 private:
  double value_;
};

TEST(Diameter, BackendResultsAreChecked) {
  const auto target = build_z_chain_target(3, 3, true);
  const SimulatorAnsatz a = make_ansatz(3, 2, Geometry::chain_periodic, 0.1);
  DiameterOptions opts;
  const FixedBackend good(0.2), bad(0.0);
  opts.backend = &good;
  EXPECT_NO_THROW(minimize_diameter(target, a, opts));
  opts.backend = &bad;
  EXPECT_THROW(minimize_diameter(target, a, opts), IntegrityError);
}

TEST(ShortTime, LocalTargetHasZeroResidual) {
  Rng rng = make_rng(42);
  const auto gens = interaction_generators(3, 1, 2, Geometry::chain_periodic);
  const auto target = random_local_operator(3, 2, Geometry::chain_periodic, rng);
  const OptimizationResult r =
      short_time_best_simulator(target, StateVector::preset(StatePreset::ghz, 3), gens);
  EXPECT_LT(r.objective, 1e-12);
}

TEST(ShortTime, ZChainOnAllZeroState) {
  const auto target = build_z_chain_target(3, 3, true);
  const auto gens = interaction_generators(3, 1, 2, Geometry::chain_periodic);
  EXPECT_LT(short_time_best_simulator(target, StateVector::preset(StatePreset::zero, 3), gens).objective,
            1e-12);
}

TEST(ShortTime, ResidualOrthogonalToDesignColumns) {
  Rng rng = make_rng(43);
  const auto gens = interaction_generators(3, 1, 2, Geometry::chain_periodic);
  for (StatePreset p : {StatePreset::ghz, StatePreset::cosdit, StatePreset::zero}) {
    const auto target = random_local_operator(3, 3, Geometry::all_subsets, rng);
    const StateVector psi = StateVector::preset(p, 3);
    const OptimizationResult r = short_time_best_simulator(target, psi, gens);
    const CVector residual = (dense(target) - dense(r.simulator(3))) * psi.amplitudes();
    EXPECT_NEAR(residual.norm(), r.objective, 1e-10);
    for (const auto& g : gens) {
      const CVector col = oracle::string_matrix(g.str()) * psi.amplitudes();
      EXPECT_LT(std::abs(col.dot(residual).real()), 1e-8);
    }
  }
}

TEST(ShortTime, MinimumNormOnRankDeficiency) {
  // On |00> the columns of ZI and IZ coincide; the minimum-norm
  // solution splits the weight evenly.
  const std::vector<PauliString> gens{PauliString::parse("ZI"), PauliString::parse("IZ")};
  const auto target = PauliOperator::term(PauliString::parse("ZZ"), 1.0);
  const OptimizationResult r =
      short_time_best_simulator(target, StateVector::preset(StatePreset::zero, 2), gens);
  EXPECT_LT(r.objective, 1e-12);
  EXPECT_NEAR(r.coefficients[0], 0.5, 1e-12);
  EXPECT_NEAR(r.coefficients[1], 0.5, 1e-12);
}

TEST(ShortTime, DistanceCurveIsLinear) {
  OptimizationResult r;
  r.objective = 0.37;
  const DistanceCurve c = short_time_distance_curve(r, {0.0, 0.01, 0.02, 0.05});
  for (std::size_t i = 0; i < c.times.size(); ++i) EXPECT_DOUBLE_EQ(c.distances[i], 0.37 * c.times[i]);
  r.objective = 0.0;
  for (double d : short_time_distance_curve(r, {0.0, 1.0}).distances) EXPECT_EQ(d, 0.0);
}

TEST(ShortTime, PresetsGiveDistinctSlopes) {
  Rng rng = make_rng(44);
  const auto target = random_local_operator(3, 3, Geometry::all_subsets, rng);
  const auto gens = interaction_generators(3, 1, 2, Geometry::chain_periodic);
  std::vector<double> slopes;
  for (StatePreset p : {StatePreset::cosdit, StatePreset::zero, StatePreset::ghz}) {
    slopes.push_back(short_time_best_simulator(target, StateVector::preset(p, 3), gens).objective);
    EXPECT_GT(slopes.back(), 1e-6);
  }
  EXPECT_NE(slopes[0], slopes[1]);
  EXPECT_NE(slopes[1], slopes[2]);
  EXPECT_NE(slopes[0], slopes[2]);
}

}  // namespace
}  // namespace hamsim
