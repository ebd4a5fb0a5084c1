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
#include <random>
#include <vector>

#include "hamsim/dynamics.hpp"
#include "hamsim/pauli.hpp"

namespace hamsim {

/// All randomness in the library flows through this engine so a seed pins every draw.
using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed);

/// Sum of the pool with independent N(0, sigma^2) coefficients.
PauliOperator random_operator(const std::vector<PauliString>& pool, Rng& rng, double sigma = 1.0);

/// Random operator over every generator of locality 1..k under `geometry`.
PauliOperator random_local_operator(std::size_t n_sites, std::size_t k, Geometry geometry, Rng& rng,
                                    double sigma = 1.0);

/// Haar-random pure state on n sites.
StateVector haar_state(std::size_t n_sites, Rng& rng);

/// Haar-random unit vector inside the span of the given basis states.
StateVector random_state_in_span(std::size_t n_sites, const std::vector<std::size_t>& basis_indices,
                                 Rng& rng);

}  // namespace hamsim
