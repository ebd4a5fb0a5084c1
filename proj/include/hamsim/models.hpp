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

#include "hamsim/pauli.hpp"

namespace hamsim {

/**
 * How model couplings map to Pauli coefficients. With spin_half every
 * m-body coupling multiplies S^a_1 ... S^a_m with S = sigma / 2, i.e. the
 * Pauli coefficient carries an extra 2^{-m}; with pauli the coupling is the
 * Pauli coefficient itself.
 */
enum class SpinConvention { spin_half, pauli };

std::string to_string(SpinConvention c);
SpinConvention spin_convention_from_string(std::string_view text);

/// J3 sum_j Z_j Z_{j+1} Z_{j+2} + hx sum_j X_j on a ring.
PauliOperator three_spin_ring(std::size_t n, double j3, double hx,
                              SpinConvention conv = SpinConvention::spin_half);

/// Heisenberg XYZ ring sum_j (Jx X_j X_{j+1} + Jy Y_j Y_{j+1} + Jz Z_j Z_{j+1}).
PauliOperator xyz_ring(std::size_t n, double jx, double jy, double jz,
                       SpinConvention conv = SpinConvention::spin_half);

/// Heisenberg XXX ring, xyz_ring(n, J, J, J).
PauliOperator xxx_ring(std::size_t n, double j, SpinConvention conv = SpinConvention::spin_half);

/// Uniform field bx sum X_j + by sum Y_j + bz sum Z_j.
PauliOperator uniform_field(std::size_t n, double bx, double by, double bz,
                            SpinConvention conv = SpinConvention::spin_half);

/**
 * Closed-form squared HS norm of [three_spin_ring, xyz_ring] on four sites,
 * |J3 (Jx - Jy)|^2 / 2 + 8 |hx (Jy - Jz)|^2. It is exact in the spin_half
 * convention; in the pauli convention the two channels scale differently.
 */
double toy_commutator_hs_sq_closed_form(double j3, double hx, double jx, double jy, double jz);

}  // namespace hamsim
