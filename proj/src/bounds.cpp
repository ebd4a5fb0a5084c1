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

#include "hamsim/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hamsim/spectral.hpp"

namespace hamsim {

namespace {

void check_time(double t) {
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
}

double operator_norm(const PauliOperator& h, NormChoice norm) {
  return norm == NormChoice::spectral ? spectral_norm(h) : hs_norm(h);
}

}  // namespace

std::string to_string(NormChoice n) {
  return n == NormChoice::spectral ? "spectral" : "hs";
}

NormChoice norm_choice_from_string(std::string_view text) {
  if (text == "spectral") return NormChoice::spectral;
  if (text == "hs" || text == "hilbert_schmidt") return NormChoice::hilbert_schmidt;
  throw DomainError("unknown norm '" + std::string(text) + "' (expected spectral or hs)");
}

double epsilon_star_from_diameter(double delta_h, double t) {
  check_time(t);
  return std::min(1.0, t * delta_h / 2.0);
}

double epsilon_star(const PauliOperator& h_t, const PauliOperator& h_qs, double t) {
  check_time(t);
  return epsilon_star_from_diameter(spectral_diameter(h_qs - h_t), t);
}

WeakBounds weak_bounds_from(double delta_h, double connector_hs_norm, double t) {
  check_time(t);
  return {0.5 * std::expm1(t * delta_h), t * connector_hs_norm};
}

WeakBounds weak_bounds(const PauliOperator& h_t, const PauliOperator& h_qs, double t) {
  const PauliOperator h = h_qs - h_t;
  return weak_bounds_from(spectral_diameter(h), hs_norm(h), t);
}

bool bch_convergence_from(double norm_sum, double t) {
  check_time(t);
  if (t == 0.0) return true;
  return norm_sum < std::numbers::pi / t;
}

bool bch_convergence_check(const PauliOperator& h_t, const PauliOperator& h_qs, double t,
                           NormChoice norm) {
  check_time(t);
  if (t == 0.0) return true;
  return bch_convergence_from(operator_norm(h_qs, norm) + operator_norm(h_t, norm), t);
}

BoundEvaluator::BoundEvaluator(const PauliOperator& h_t, const PauliOperator& h_qs,
                               NormChoice norm) {
  const PauliOperator h = h_qs - h_t;
  delta_h_ = spectral_diameter(h);
  hs_ = hs_norm(h);
  norm_sum_ = operator_norm(h_qs, norm) + operator_norm(h_t, norm);
}

BoundReport BoundEvaluator::at(double t) const {
  const WeakBounds w = weak_bounds_from(delta_h_, hs_, t);
  return {t, delta_h_, epsilon_star_from_diameter(delta_h_, t), w.b1, w.b2,
          bch_convergence_from(norm_sum_, t)};
}

double BoundEvaluator::bch_threshold() const {
  return norm_sum_ > 0.0 ? std::numbers::pi / norm_sum_ : std::numeric_limits<double>::infinity();
}

BoundReport bound_report(const PauliOperator& h_t, const PauliOperator& h_qs, double t,
                         NormChoice norm) {
  return BoundEvaluator(h_t, h_qs, norm).at(t);
}

}  // namespace hamsim
