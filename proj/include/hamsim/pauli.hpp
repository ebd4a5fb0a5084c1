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

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hamsim/errors.hpp"
#include "hamsim/types.hpp"

namespace hamsim {

/** Single-site Pauli letter; the enumerator order fixes the canonical term order. */
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/**
 * Tensor product of single-site Pauli matrices on n sites.
 *
 * Site 0 is the most significant qubit of the dense realization, so the
 * computational basis index of |b_0 b_1 ... b_{n-1}> is sum_s b_s 2^{n-1-s}.
 * Strings order lexicographically over (site, letter) with I < X < Y < Z.
 */
class PauliString {
 public:
  PauliString() = default;
  /// Identity on n_sites sites.
  explicit PauliString(std::size_t n_sites);
  explicit PauliString(std::vector<Pauli> letters);

  /// Parses "IXYZ"-style text, site 0 first.
  static PauliString parse(std::string_view text);
  static PauliString single(std::size_t n_sites, std::size_t site, Pauli p);
  static PauliString on_sites(std::size_t n_sites,
                              std::span<const std::pair<std::size_t, Pauli>> letters);

  std::size_t n_sites() const { return letters_.size(); }
  Pauli operator[](std::size_t site) const { return letters_.at(site); }
  const std::vector<Pauli>& letters() const { return letters_; }
  PauliString with(std::size_t site, Pauli p) const;

  /// Number of non-identity letters.
  std::size_t locality() const;
  bool is_identity() const { return locality() == 0; }
  std::string str() const;

  /// Bit (n-1-s) is set when site s carries X or Y.
  std::uint64_t x_mask() const;
  /// Bit (n-1-s) is set when site s carries Z or Y.
  std::uint64_t z_mask() const;
  std::size_t y_count() const;

  bool commutes_with(const PauliString& other) const;

  auto operator<=>(const PauliString&) const = default;
  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> letters_;
};

struct PauliProduct {
  Complex phase;  // one of 1, i, -1, -i
  PauliString string;
};

/// a * b == phase * result.
PauliProduct pauli_product(const PauliString& a, const PauliString& b);

/// Coefficients with magnitude below this are dropped when canonicalizing.
inline constexpr double kPruneThreshold = 1e-14;

/**
 * Weighted sum of Pauli strings on a fixed number of sites. Terms are kept in
 * canonical order and no stored coefficient is zero. With real coefficients
 * (PauliOperator) the dense realization is Hermitian.
 */
template <typename Coeff>
class PauliSum {
 public:
  using Terms = std::map<PauliString, Coeff>;

  PauliSum() = default;
  explicit PauliSum(std::size_t n_sites) : n_sites_(n_sites) {}
  PauliSum(std::size_t n_sites, std::span<const std::pair<PauliString, Coeff>> terms)
      : n_sites_(n_sites) {
    for (const auto& [s, c] : terms) add_term(s, c);
  }

  static PauliSum identity(std::size_t n_sites, Coeff c = Coeff{1}) {
    PauliSum out(n_sites);
    out.add_term(PauliString(n_sites), c);
    return out;
  }
  static PauliSum term(const PauliString& s, Coeff c = Coeff{1}) {
    PauliSum out(s.n_sites());
    out.add_term(s, c);
    return out;
  }

  std::size_t n_sites() const { return n_sites_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const PauliString& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Coeff{} : it->second;
  }

  /// Largest locality among the stored terms.
  std::size_t max_locality() const {
    std::size_t k = 0;
    for (const auto& [s, c] : terms_) k = std::max(k, s.locality());
    return k;
  }

  PauliSum& add_term(const PauliString& s, Coeff c) {
    if (s.n_sites() != n_sites_) {
      throw DimensionError("Pauli string on " + std::to_string(s.n_sites()) +
                           " sites added to operator on " + std::to_string(n_sites_));
    }
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
    return *this;
  }

  PauliSum& operator+=(const PauliSum& o) {
    check_sites(o);
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
  }
  PauliSum& operator-=(const PauliSum& o) {
    check_sites(o);
    for (const auto& [s, c] : o.terms_) add_term(s, -c);
    return *this;
  }
  PauliSum& operator*=(Coeff a) {
    Terms scaled;
    for (const auto& [s, c] : terms_) {
      Coeff v = c * a;
      if (std::abs(v) >= kPruneThreshold) scaled.emplace_hint(scaled.end(), s, v);
    }
    terms_ = std::move(scaled);
    return *this;
  }

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Coeff s) { return a *= s; }
  friend PauliSum operator*(Coeff s, PauliSum a) { return a *= s; }
  friend PauliSum operator-(PauliSum a) { return a *= Coeff{-1}; }

  bool operator==(const PauliSum&) const = default;

 private:
  void check_sites(const PauliSum& o) const {
    if (o.n_sites_ != n_sites_) {
      throw DimensionError("operators act on " + std::to_string(n_sites_) + " and " +
                           std::to_string(o.n_sites_) + " sites");
    }
  }

  std::size_t n_sites_ = 0;
  Terms terms_;
};

using PauliOperator = PauliSum<double>;
using ComplexPauliSum = PauliSum<Complex>;

/// Operator product as a complex-weighted Pauli sum.
ComplexPauliSum product(const PauliOperator& a, const PauliOperator& b);

/// [a, b] = ab - ba. Coefficients are purely imaginary for Hermitian inputs.
ComplexPauliSum commutator(const PauliOperator& a, const PauliOperator& b);

/// True when hs_norm([a, b]) <= tol * max(1, hs_norm(a) hs_norm(b) / sqrt(2^n)).
bool commute(const PauliOperator& a, const PauliOperator& b, double tol = 1e-10);

/// Hilbert-Schmidt (Frobenius) norm of the dense realization, sqrt(2^n sum |c|^2).
template <typename Coeff>
double hs_norm(const PauliSum<Coeff>& a) {
  double sum = 0.0;
  for (const auto& [s, c] : a.terms()) sum += std::norm(Complex(c));
  return std::sqrt(std::ldexp(sum, static_cast<int>(a.n_sites())));
}

/// Tr[a b] computed from shared strings: 2^n sum_s a_s b_s.
double trace_inner_product(const PauliOperator& a, const PauliOperator& b);

/// Dense 2^n x 2^n realization (site 0 most significant).
CMatrix dense(const PauliString& s);
CMatrix dense(const PauliOperator& a, const DenseOptions& opts = {});
CMatrix dense(const ComplexPauliSum& a, const DenseOptions& opts = {});

/// s |v> without densifying.
CVector apply(const PauliString& s, const CVector& v);
CVector apply(const PauliOperator& a, const CVector& v);

/// Largest singular value of the dense realization.
double spectral_norm(const PauliOperator& a, const DenseOptions& opts = {});
double spectral_norm(const ComplexPauliSum& a, const DenseOptions& opts = {});
double spectral_norm(const CMatrix& m);

/// Sum_i coefficients[i] * generators[i].
PauliOperator combine(std::size_t n_sites, std::span<const PauliString> generators,
                      std::span<const double> coefficients);

// ---------------------------------------------------------------------------
// Interaction bases

enum class Geometry { all_subsets, chain_open, chain_periodic };

std::string to_string(Geometry g);
Geometry geometry_from_string(std::string_view text);

/**
 * All Pauli strings of locality exactly `locality_j` on n sites, restricted
 * by geometry: any j sites (all_subsets), or j consecutive sites with or
 * without wrap-around. Generators are distinct and sorted canonically, hence
 * mutually orthogonal under the trace inner product.
 */
struct InteractionBasis {
  std::size_t n_sites = 0;
  std::size_t locality_j = 0;
  Geometry geometry = Geometry::all_subsets;
  std::vector<PauliString> generators;
};

InteractionBasis generate_interaction_basis(std::size_t n, std::size_t j, Geometry geometry);

/// Generators of every locality in [min_j, max_j], in increasing locality.
std::vector<PauliString> interaction_generators(std::size_t n, std::size_t min_j,
                                                std::size_t max_j, Geometry geometry);

/**
 * C_k sum_l Z_l Z_{l+1} ... Z_{l+k-1} over n sites. Coinciding windows are
 * merged. Without an explicit c_k the operator is scaled to unit HS norm.
 */
PauliOperator build_z_chain_target(std::size_t n, std::size_t k, bool periodic,
                                   std::optional<double> c_k = std::nullopt);

}  // namespace hamsim
