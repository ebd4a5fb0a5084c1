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

#include "hamsim/models.hpp"

#include <cmath>

namespace hamsim {

namespace {

double body_scale(std::size_t bodies, SpinConvention conv) {
  return conv == SpinConvention::spin_half ? std::ldexp(1.0, -static_cast<int>(bodies)) : 1.0;
}

void check_ring(std::size_t n, std::size_t span) {
  if (n < span) {
    throw DomainError("ring of " + std::to_string(n) + " sites cannot host " +
                      std::to_string(span) + "-site terms");
  }
}

PauliString window(std::size_t n, std::size_t start, std::size_t len, Pauli p) {
  PauliString s(n);
  for (std::size_t q = 0; q < len; ++q) s = s.with((start + q) % n, p);
  return s;
}

}  // namespace

std::string to_string(SpinConvention c) {
  return c == SpinConvention::spin_half ? "spin_half" : "pauli";
}

SpinConvention spin_convention_from_string(std::string_view text) {
  if (text == "spin_half") return SpinConvention::spin_half;
  if (text == "pauli") return SpinConvention::pauli;
  throw DomainError("unknown spin convention '" + std::string(text) +
                    "' (expected spin_half or pauli)");
}

PauliOperator three_spin_ring(std::size_t n, double j3, double hx, SpinConvention conv) {
  check_ring(n, 3);
  PauliOperator h(n);
  for (std::size_t j = 0; j < n; ++j) {
    h.add_term(window(n, j, 3, Pauli::Z), j3 * body_scale(3, conv));
    h.add_term(PauliString::single(n, j, Pauli::X), hx * body_scale(1, conv));
  }
  return h;
}

PauliOperator xyz_ring(std::size_t n, double jx, double jy, double jz, SpinConvention conv) {
  check_ring(n, 2);
  PauliOperator h(n);
  const double s = body_scale(2, conv);
  for (std::size_t j = 0; j < n; ++j) {
    h.add_term(window(n, j, 2, Pauli::X), jx * s);
    h.add_term(window(n, j, 2, Pauli::Y), jy * s);
    h.add_term(window(n, j, 2, Pauli::Z), jz * s);
  }
  return h;
}

PauliOperator xxx_ring(std::size_t n, double j, SpinConvention conv) {
  return xyz_ring(n, j, j, j, conv);
}

PauliOperator uniform_field(std::size_t n, double bx, double by, double bz, SpinConvention conv) {
  PauliOperator h(n);
  const double s = body_scale(1, conv);
  for (std::size_t j = 0; j < n; ++j) {
    h.add_term(PauliString::single(n, j, Pauli::X), bx * s);
    h.add_term(PauliString::single(n, j, Pauli::Y), by * s);
    h.add_term(PauliString::single(n, j, Pauli::Z), bz * s);
  }
  return h;
}

double toy_commutator_hs_sq_closed_form(double j3, double hx, double jx, double jy, double jz) {
  const double a = j3 * (jx - jy);
  const double b = hx * (jy - jz);
  return a * a / 2.0 + 8.0 * b * b;
}

}  // namespace hamsim
