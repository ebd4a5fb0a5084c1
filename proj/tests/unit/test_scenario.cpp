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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hamsim/scenario.hpp"

namespace hamsim::scenario {
namespace {

namespace fs = std::filesystem;

bool has(const std::vector<std::string>& diags, const std::string& needle) {
  for (const auto& d : diags) {
    if (d.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class ScenarioRun : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("hamsim_scenario_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }
  RunOptions opts(const std::string& sub) const {
    RunOptions o;
    o.out_dir = root_ / sub;
    return o;
  }
  fs::path root_;
};

TEST(Validate, WellFormedIsClean) {
  const json s = {{"kind", "bounds_compare"},
                  {"params",
                   {{"target", {{"model", "z_chain"}, {"n_sites", 3}, {"k", 3}}},
                    {"simulator", {{"model", "xxx_ring"}, {"n_sites", 3}, {"j", 0.5}}},
                    {"times", {0.0, 0.5, 1.0}}}}};
  EXPECT_TRUE(validate(s).empty());
}

TEST(Validate, LocalityExceedsSystemSize) {
  const json s = {{"kind", "diameter_min"}, {"seed", 1},
                  {"params", {{"n_sites", 3}, {"k_prime", 2}, {"target_k", {3, 4}}}}};
  EXPECT_TRUE(has(validate(s), "locality exceeds system size"));
  const json t = {{"kind", "short_time"},
                  {"params", {{"n_sites", 3}, {"target", {{"model", "z_chain"}, {"n_sites", 3}, {"k", 4}}}}}};
  EXPECT_TRUE(has(validate(t), "locality exceeds system size"));
}

TEST(Validate, TimeGridChecks) {
  json s = {{"kind", "fidelity_sweep"},
            {"params",
             {{"target", {{"model", "z_chain"}, {"n_sites", 2}, {"k", 2}}},
              {"simulator", {{"model", "xxx_ring"}, {"n_sites", 2}}},
              {"state", {{"preset", "zero"}, {"n_sites", 2}}},
              {"times", {0.0, -0.5}}}}};
  EXPECT_TRUE(has(validate(s), "negative time"));
  s["params"]["times"] = {0.5, 0.1};
  EXPECT_TRUE(has(validate(s), "ascending"));
}

TEST(Validate, BetaAndKinds) {
  const json s = {{"kind", "diameter_min"}, {"seed", 1}, {"params", {{"beta", -0.1}}}};
  EXPECT_TRUE(has(validate(s), "beta must be nonnegative"));
  const auto diags = validate(json{{"kind", "teleport"}});
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_NE(diags[0].find("parent_check"), std::string::npos);
  EXPECT_TRUE(has(validate(json::array()), "JSON object"));
}

TEST(Validate, RandomizedNeedsSeed) {
  const json s = {{"kind", "shared_bound"}, {"params", {{"samples", 2}}}};
  EXPECT_TRUE(has(validate(s), "seed"));
  EXPECT_TRUE(validate(s, true).empty());
  const json det = {{"kind", "parent_check"}, {"params", json::object()}};
  EXPECT_TRUE(validate(det).empty());
}

TEST(Validate, MismatchedSites) {
  const json s = {{"kind", "bounds_compare"},
                  {"params",
                   {{"target", {{"model", "z_chain"}, {"n_sites", 3}, {"k", 3}}},
                    {"simulator", {{"model", "xxx_ring"}, {"n_sites", 4}}}}}};
  EXPECT_TRUE(has(validate(s), "different numbers of sites"));
}

TEST(Validate, ParentLocalities) {
  const json s = {{"kind", "parent_check"}, {"params", {{"k", 2}, {"k_prime", 2}}}};
  EXPECT_TRUE(has(validate(s), "k_prime"));
}

TEST(Profiles, KnownNames) {
  EXPECT_EQ(tolerance_profile("strict").name, "strict");
  EXPECT_LT(tolerance_profile("strict").fidelity_tol, tolerance_profile("default").fidelity_tol);
  EXPECT_THROW(tolerance_profile("loose"), DomainError);
}

TEST_F(ScenarioRun, InvalidScenarioExitsTwo) {
  const RunResult r = run(json{{"kind", "nope"}}, opts("a"));
  EXPECT_EQ(r.exit_code, kExitInvalid);
  EXPECT_FALSE(fs::exists(root_ / "a" / "manifest.json"));
  RunOptions bad = opts("b");
  bad.tol_profile = "loose";
  EXPECT_EQ(run(json{{"kind", "parent_check"}}, bad).exit_code, kExitInvalid);
}

TEST_F(ScenarioRun, NonConvergenceExitsThreeWithReports) {
  const json s = {{"kind", "diameter_min"},
                  {"seed", 2},
                  {"params", {{"n_sites", 3}, {"k_prime", 1}, {"target_k", {3}}, {"max_iterations", 3},
                              {"restarts", 1}}}};
  const RunResult r = run(s, opts("a"));
  EXPECT_EQ(r.exit_code, kExitNotConverged);
  EXPECT_TRUE(fs::exists(root_ / "a" / "objectives.csv"));
  EXPECT_TRUE(fs::exists(root_ / "a" / "manifest.json"));
}

TEST_F(ScenarioRun, ManifestRecordsInputs) {
  const json s = {{"kind", "parent_check"}, {"params", json::object()}};
  RunOptions o = opts("a");
  o.seed = 77;
  o.tol_profile = "strict";
  ASSERT_EQ(run(s, o).exit_code, kExitOk);
  const json m = io::read_json(root_ / "a" / "manifest.json");
  EXPECT_EQ(m.at("seed"), 77);
  EXPECT_EQ(m.at("version"), kVersion);
  EXPECT_EQ(m.at("tolerance_profile"), "strict");
  EXPECT_EQ(m.at("inputs").at("kind"), "parent_check");
  EXPECT_TRUE(m.at("tolerances").contains("kernel"));
}

TEST_F(ScenarioRun, ReRunIsByteIdentical) {
  const json s = {{"kind", "fidelity_sweep"},
                  {"seed", 5},
                  {"params",
                   {{"target", {{"model", "random"}, {"n_sites", 3}, {"k", 3}}},
                    {"simulator", {{"model", "random"}, {"n_sites", 3}, {"k", 2}}},
                    {"state", {{"haar", true}, {"n_sites", 3}}},
                    {"times", {{"t_max", 2.0}, {"points", 21}}}}}};
  RunOptions a = opts("a"), b = opts("b");
  b.threads = 3;
  ASSERT_EQ(run(s, a).exit_code, kExitOk);
  ASSERT_EQ(run(s, b).exit_code, kExitOk);
  EXPECT_EQ(slurp(root_ / "a" / "fidelity.csv"), slurp(root_ / "b" / "fidelity.csv"));
  RunOptions c = opts("c");
  c.seed = 6;
  ASSERT_EQ(run(s, c).exit_code, kExitOk);
  EXPECT_NE(slurp(root_ / "a" / "fidelity.csv"), slurp(root_ / "c" / "fidelity.csv"));
}

TEST_F(ScenarioRun, ExactCommutingReportsExactSets) {
  const json s = {{"kind", "exact_commuting"}, {"seed", 3}, {"params", {{"times", {{"t_max", 10.0}, {"points", 5}}}}}};
  ASSERT_EQ(run(s, opts("a")).exit_code, kExitOk);
  const json r = io::read_json(root_ / "a" / "report.json");
  EXPECT_TRUE(r.at("all_exact").get<bool>());
  EXPECT_FALSE(r.at("crossings").empty());
}

TEST_F(ScenarioRun, NoncommutingReportsTheta) {
  const json s = {{"kind", "exact_noncommuting"}, {"seed", 3}, {"params", {{"times", {{"t_max", 10.0}, {"points", 5}}}}}};
  ASSERT_EQ(run(s, opts("a")).exit_code, kExitOk);
  const json r = io::read_json(root_ / "a" / "report.json");
  EXPECT_EQ(r.at("n_theta"), 12);
  EXPECT_EQ(r.at("common_dim"), 11);
  EXPECT_TRUE(r.at("all_exact").get<bool>());
}

TEST_F(ScenarioRun, FieldSearchFindsTheLargeNullity) {
  const json s = {{"kind", "exact_noncommuting"},
                  {"seed", 1},
                  {"params",
                   {{"times", {0.0, 1.0}},
                    {"field_search", {{"bx", {-4.0, 0.0, 4.0}}, {"bz", {-1.0, 0.0, 1.0}}}}}}};
  ASSERT_EQ(run(s, opts("a")).exit_code, kExitOk);
  const json r = io::read_json(root_ / "a" / "report.json");
  EXPECT_EQ(r.at("field_search_best").at("n_theta"), 12);
  EXPECT_EQ(r.at("field_search_best").at("field"), json({-4.0, 0.0, 1.0}));
  EXPECT_EQ(r.at("shared_subspace").at("basis").size(), 12u);
  EXPECT_TRUE(fs::exists(root_ / "a" / "field_search.csv"));
  const json bad = {{"kind", "exact_noncommuting"}, {"seed", 1}, {"params", {{"field_search", {{"bx", json::array()}}}}}};
  EXPECT_TRUE(has(validate(bad), "nonempty array"));
}

TEST(Builders, OperatorSpecs) {
  Rng rng = make_rng(0);
  const PauliOperator sum = build_operator(
      {{"sum", {{{"model", "xxx_ring"}, {"n_sites", 4}, {"j", 1.0}},
                {{"model", "uniform_field"}, {"n_sites", 4}, {"bz", 1.0}}}}},
      rng);
  EXPECT_EQ(sum.n_sites(), 4u);
  EXPECT_THROW(build_operator({{"model", "ising"}, {"n_sites", 2}}, rng), DomainError);
  EXPECT_THROW(build_operator({{"model", "xxx_ring"}, {"n_sites", 20}}, rng), CapacityError);
  const auto times = build_times({{"t_min", 1.0}, {"t_max", 2.0}, {"points", 3}});
  EXPECT_EQ(times, (std::vector<double>{1.0, 1.5, 2.0}));
}

}  // namespace
}  // namespace hamsim::scenario
