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

#include <gtest/gtest.h>

#include "hamsim/io.hpp"
#include "hamsim/models.hpp"
#include "hamsim/random.hpp"

namespace hamsim {
namespace {

TEST(Io, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 123456789.125}) {
    EXPECT_EQ(std::stod(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(-0.0), "0");
  EXPECT_EQ(io::format_double(2.0), "2");
}

TEST(Io, OperatorRoundTrip) {
  Rng rng = make_rng(60);
  const PauliOperator op = random_local_operator(3, 2, Geometry::all_subsets, rng);
  const io::json j = io::to_json(op);
  EXPECT_EQ(j.at("n_sites"), 3);
  EXPECT_EQ(io::operator_from_json(io::json::parse(j.dump())), op);
  EXPECT_THROW(io::operator_from_json(io::json{{"n_sites", 2}}), DomainError);
}

TEST(Io, StateRoundTripAndPresets) {
  Rng rng = make_rng(61);
  const StateVector psi = haar_state(2, rng);
  const StateVector back = io::state_from_json(io::json::parse(io::to_json(psi).dump()));
  EXPECT_EQ(back.amplitudes(), psi.amplitudes());
  const StateVector w = io::state_from_json({{"preset", "w"}, {"n_sites", 3}});
  EXPECT_EQ(w.amplitudes(), StateVector::preset(StatePreset::w, 3).amplitudes());
  EXPECT_THROW(io::state_from_json({{"amplitudes", {1.0, 1.0}}}), ContractError);
  EXPECT_NO_THROW(io::state_from_json({{"amplitudes", {1.0, 1.0}}, {"normalize", true}}));
  EXPECT_THROW(io::state_from_json({{"amplitudes", {1.0, 0.0, 0.0}}}), DimensionError);
}

TEST(Io, AnsatzJson) {
  const io::json j = {{"n_sites", 4}, {"k_prime", 2}, {"geometry", "chain_open"},
                      {"beta", 0.02}, {"beta_convention", "trace"}, {"floor", "none"}};
  const SimulatorAnsatz a = io::ansatz_from_json(j);
  EXPECT_EQ(a.geometry, Geometry::chain_open);
  EXPECT_EQ(a.beta_convention, BetaConvention::trace);
  EXPECT_TRUE(a.floor_set.empty());
  const io::json out = io::to_json(a);
  EXPECT_EQ(out.at("beta_convention"), "trace");
  EXPECT_DOUBLE_EQ(out.at("floor_value").get<double>(), 0.02 / 16.0);
}

TEST(Io, SharedSubspaceInterleavesBasis) {
  const SharedSubspace theta = shared_subspace(three_spin_ring(4, 1.0, 1.0), uniform_field(4, -4.0, 0.0, 1.0));
  const io::json j = io::to_json(theta);
  ASSERT_EQ(j.at("basis").size(), theta.dimension());
  const auto& col = j.at("basis")[3];
  ASSERT_EQ(col.size(), 32u);
  EXPECT_EQ(col[10].get<double>(), theta.basis(5, 3).real());
  EXPECT_EQ(col[11].get<double>(), theta.basis(5, 3).imag());
  EXPECT_EQ(j.at("eigs_a").size(), theta.dimension());
}

TEST(Io, CsvLayouts) {
  BoundReport r;
  r.t = 0.5;
  r.delta_h = 2.0;
  r.eps_star = 0.5;
  r.b1 = 0.75;
  r.b2 = 1.25;
  EXPECT_EQ(io::to_csv(std::vector<BoundReport>{r}),
            "t,delta_h,eps_star,b1,b2,bch_convergent\n0.5,2,0.5,0.75,1.25,1\n");
  FidelityCurve c{{0.0, 0.1}, {1.0, 0.99}, {1.0, 0.9}};
  EXPECT_EQ(io::to_csv(c), "t,fidelity,bound\n0,1,1\n0.10000000000000001,0.98999999999999999,0.90000000000000002\n");
  io::CsvTable t({"a", "b"});
  EXPECT_THROW(t.row({"1"}), IntegrityError);
}

TEST(Io, WriteAndReadFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "hamsim_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  io::write_text(dir / "x.json", R"({"a": 1})");
  EXPECT_EQ(io::read_json(dir / "x.json").at("a"), 1);
  io::write_text(dir / "bad.json", "{");
  EXPECT_THROW(io::read_json(dir / "bad.json"), DomainError);
  EXPECT_THROW(io::read_json(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir.parent_path());
}

}  // namespace
}  // namespace hamsim
