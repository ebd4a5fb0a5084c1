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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamsim/io.hpp"
#include "hamsim/random.hpp"

namespace hamsim::scenario {

using io::json;

enum class Kind {
  exact_commuting,
  exact_noncommuting,
  shared_bound,
  diameter_min,
  short_time,
  bounds_compare,
  fidelity_sweep,
  parent_check,
};

std::string to_string(Kind k);
std::optional<Kind> kind_from_string(std::string_view text);
/// Comma-separated list of every kind, for messages.
std::string kind_names();

struct ToleranceProfile {
  std::string name;
  double kernel_tol;
  double residual_tol;
  double fidelity_tol;
  double stall_tol;
  double parent_tol;
  double condition_tol;
};

/// "default" or "strict"; anything else throws DomainError.
ToleranceProfile tolerance_profile(std::string_view name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNotConverged = 3;

struct RunOptions {
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::string tol_profile = "default";
};

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::string> messages;
  std::vector<std::string> files;  // relative to out_dir
};

/// Schema and physics diagnostics; empty when the scenario is runnable.
std::vector<std::string> validate(const json& scenario, bool seed_supplied = false);
std::vector<std::string> validate_file(const std::filesystem::path& path, bool seed_supplied = false);

RunResult run(const json& scenario, const RunOptions& opts);
RunResult run_file(const std::filesystem::path& path, const RunOptions& opts);

/**
 * Operator from a scenario spec: a model ({"model": "three_spin_ring", ...}),
 * an explicit term list ({"terms": [...]}) or a sum ({"sum": [spec, ...]}).
 * Random models draw from `rng`.
 */
PauliOperator build_operator(const json& spec, Rng& rng);

/// {"preset": ..., "n_sites": n}, {"amplitudes": ...} or {"haar": true, "n_sites": n}.
StateVector build_state(const json& spec, Rng& rng);

/// {"t_min": 0, "t_max": T, "points": P} or an explicit array.
std::vector<double> build_times(const json& spec);

}  // namespace hamsim::scenario
