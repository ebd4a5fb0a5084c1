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

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "hamsim/bounds.hpp"
#include "hamsim/connector_opt.hpp"
#include "hamsim/dynamics.hpp"
#include "hamsim/parent_ham.hpp"
#include "hamsim/pauli.hpp"
#include "hamsim/shared_eigs.hpp"

namespace hamsim::io {

using nlohmann::json;

/// Round-trip decimal ("%.17g"); the text is identical across runs.
std::string format_double(double v);

/// {"n_sites": n, "terms": [{"string": "XZI", "coeff": c}, ...]}
json to_json(const PauliOperator& op);
PauliOperator operator_from_json(const json& j);

/// {"preset": "w", "n_sites": 3} or {"amplitudes": [[re, im], ...]}.
json to_json(const StateVector& psi);
StateVector state_from_json(const json& j);

json to_json(const SharedSubspace& theta);
json to_json(const SimulatorAnsatz& ansatz);
SimulatorAnsatz ansatz_from_json(const json& j);
json to_json(const OptimizationResult& result);
json to_json(const BoundReport& report);
json to_json(const ParentReport& report);
json to_json(const NecessaryConditionReport& report);

/// Simple CSV writer with fixed number formatting.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row(const std::vector<std::string>& cells);
  std::string str() const;

 private:
  std::size_t width_;
  std::string text_;
};

std::string to_csv(const std::vector<BoundReport>& reports);
std::string to_csv(const FidelityCurve& curve);
std::string to_csv(const DistanceCurve& curve);

void write_text(const std::filesystem::path& path, const std::string& text);
json read_json(const std::filesystem::path& path);

}  // namespace hamsim::io
