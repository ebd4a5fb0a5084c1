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

// hamsim: run or validate scenario files.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hamsim/scenario.hpp"
#include "hamsim/types.hpp"

namespace {

std::size_t threads_from_env() {
  const char* env = std::getenv("HAMSIM_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    const long v = std::stol(env);
    return v > 0 ? static_cast<std::size_t>(v) : 1;
  } catch (const std::exception&) {
    std::cerr << "warning: ignoring malformed HAMSIM_THREADS='" << env << "'\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  namespace sc = hamsim::scenario;
  CLI::App app{"Hamiltonian simulability scenarios"};
  app.set_version_flag("--version", std::string(hamsim::kVersion));
  app.require_subcommand(1);

  std::string scenario_file;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string tol_profile = "default";

  auto* run = app.add_subcommand("run", "Execute a scenario and write its reports");
  run->add_option("scenario", scenario_file, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--seed", seed, "Seed overriding the scenario file");
  run->add_option("--threads", threads, "Worker threads (fallback: HAMSIM_THREADS)")
      ->check(CLI::PositiveNumber);
  run->add_option("--tol-profile", tol_profile, "Tolerance profile")
      ->check(CLI::IsMember({"default", "strict"}))
      ->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check a scenario without running it");
  validate->add_option("scenario", scenario_file, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  validate->add_option("--seed", seed, "Seed that would override the scenario file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sc::kExitInvalid;
  }

  if (validate->parsed()) {
    const auto diagnostics = sc::validate_file(scenario_file, seed.has_value());
    for (const auto& d : diagnostics) std::cerr << scenario_file << ": " << d << '\n';
    if (!diagnostics.empty()) return sc::kExitInvalid;
    std::cout << scenario_file << ": ok\n";
    return sc::kExitOk;
  }

  sc::RunOptions opts;
  opts.out_dir = out_dir;
  opts.seed = seed;
  opts.threads = threads.value_or(threads_from_env());
  opts.tol_profile = tol_profile;
  try {
    const sc::RunResult result = sc::run_file(scenario_file, opts);
    for (const auto& m : result.messages) std::cerr << scenario_file << ": " << m << '\n';
    for (const auto& f : result.files) std::cout << (opts.out_dir / f).string() << '\n';
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << scenario_file << ": error: " << e.what() << '\n';
    return 1;
  }
}
