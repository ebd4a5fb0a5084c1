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

#include <string>
#include <string_view>

#include "hamsim/pauli.hpp"

namespace hamsim {

/**
 * Error bounds for simulating h_t by h_qs up to time t, with connector
 * h = h_qs - h_t. eps_star = min(1, t * delta_h / 2) is the tight bound;
 * b1 = (exp(t * delta_h) - 1) / 2 and b2 = t * ||h||_HS are the weaker ones,
 * reported unclamped.
 */
struct BoundReport {
  double t = 0.0;
  double delta_h = 0.0;
  double eps_star = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  bool bch_convergent = true;
};

enum class NormChoice { spectral, hilbert_schmidt };

std::string to_string(NormChoice n);
NormChoice norm_choice_from_string(std::string_view text);

double epsilon_star(const PauliOperator& h_t, const PauliOperator& h_qs, double t);
/// min(1, t * delta_h / 2) from a known spectral diameter.
double epsilon_star_from_diameter(double delta_h, double t);

struct WeakBounds {
  double b1 = 0.0;
  double b2 = 0.0;
};

WeakBounds weak_bounds(const PauliOperator& h_t, const PauliOperator& h_qs, double t);
WeakBounds weak_bounds_from(double delta_h, double connector_hs_norm, double t);

/// ||h_qs|| + ||h_t|| < pi / t; vacuously true at t = 0.
bool bch_convergence_check(const PauliOperator& h_t, const PauliOperator& h_qs, double t,
                           NormChoice norm = NormChoice::spectral);
bool bch_convergence_from(double norm_sum, double t);

/**
 * Precomputes the connector quantities once so that reports for many times
 * are cheap.
 */
class BoundEvaluator {
 public:
  BoundEvaluator(const PauliOperator& h_t, const PauliOperator& h_qs,
                 NormChoice norm = NormChoice::spectral);

  BoundReport at(double t) const;
  double delta_h() const { return delta_h_; }
  double connector_hs_norm() const { return hs_; }
  /// The time at which the BCH flag flips, pi / (||h_qs|| + ||h_t||).
  double bch_threshold() const;

 private:
  double delta_h_ = 0.0;
  double hs_ = 0.0;
  double norm_sum_ = 0.0;
};

BoundReport bound_report(const PauliOperator& h_t, const PauliOperator& h_qs, double t,
                         NormChoice norm = NormChoice::spectral);

}  // namespace hamsim
