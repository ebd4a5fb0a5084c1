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

#include "hamsim/random.hpp"

#include "hamsim/errors.hpp"

namespace hamsim {

Rng make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32)};
  return Rng(seq);
}

PauliOperator random_operator(const std::vector<PauliString>& pool, Rng& rng, double sigma) {
  if (pool.empty()) throw DomainError("random_operator: empty generator pool");
  std::normal_distribution<double> normal(0.0, sigma);
  PauliOperator out(pool.front().n_sites());
  for (const auto& s : pool) out.add_term(s, normal(rng));
  return out;
}

PauliOperator random_local_operator(std::size_t n_sites, std::size_t k, Geometry geometry, Rng& rng,
                                    double sigma) {
  if (k == 0 || k > n_sites) throw DomainError("locality exceeds system size");
  return random_operator(interaction_generators(n_sites, 1, k, geometry), rng, sigma);
}

StateVector haar_state(std::size_t n_sites, Rng& rng) {
  if (n_sites == 0 || n_sites > 30) throw DomainError("haar_state needs 1..30 sites");
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(Eigen::Index{1} << n_sites);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return StateVector::normalized(v);
}

StateVector random_state_in_span(std::size_t n_sites, const std::vector<std::size_t>& basis_indices,
                                 Rng& rng) {
  if (basis_indices.empty()) throw DomainError("random_state_in_span: empty basis");
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v = CVector::Zero(Eigen::Index{1} << n_sites);
  for (std::size_t idx : basis_indices) {
    if (idx >= static_cast<std::size_t>(v.size())) throw DimensionError("basis index out of range");
    const double re = normal(rng);
    const double im = normal(rng);
    v(static_cast<Eigen::Index>(idx)) = Complex(re, im);
  }
  return StateVector::normalized(v);
}

}  // namespace hamsim
