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

#include "hamsim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hamsim {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: break;
  }
  throw DomainError(std::string("invalid Pauli letter '") + c + "'");
}

PauliString::PauliString(std::size_t n_sites) : letters_(n_sites, Pauli::I) {}

PauliString::PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {}

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(pauli_from_char(c));
  return PauliString(std::move(letters));
}

PauliString PauliString::single(std::size_t n_sites, std::size_t site, Pauli p) {
  return PauliString(n_sites).with(site, p);
}

PauliString PauliString::on_sites(std::size_t n_sites,
                                  std::span<const std::pair<std::size_t, Pauli>> letters) {
  PauliString out(n_sites);
  for (const auto& [site, p] : letters) out = out.with(site, p);
  return out;
}

PauliString PauliString::with(std::size_t site, Pauli p) const {
  if (site >= letters_.size()) {
    throw DomainError("site " + std::to_string(site) + " outside " +
                      std::to_string(letters_.size()) + "-site string");
  }
  PauliString out = *this;
  out.letters_[site] = p;
  return out;
}

std::size_t PauliString::locality() const {
  return static_cast<std::size_t>(
      std::count_if(letters_.begin(), letters_.end(), [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Pauli p : letters_) out.push_back(to_char(p));
  return out;
}

std::uint64_t PauliString::x_mask() const {
  if (letters_.size() > 63) throw CapacityError("bit masks support at most 63 sites");
  std::uint64_t m = 0;
  const std::size_t n = letters_.size();
  for (std::size_t s = 0; s < n; ++s) {
    if (letters_[s] == Pauli::X || letters_[s] == Pauli::Y) m |= std::uint64_t{1} << (n - 1 - s);
  }
  return m;
}

std::uint64_t PauliString::z_mask() const {
  if (letters_.size() > 63) throw CapacityError("bit masks support at most 63 sites");
  std::uint64_t m = 0;
  const std::size_t n = letters_.size();
  for (std::size_t s = 0; s < n; ++s) {
    if (letters_[s] == Pauli::Z || letters_[s] == Pauli::Y) m |= std::uint64_t{1} << (n - 1 - s);
  }
  return m;
}

std::size_t PauliString::y_count() const {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), Pauli::Y));
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.n_sites() != n_sites()) throw DimensionError("Pauli strings differ in site count");
  std::size_t anti = 0;
  for (std::size_t s = 0; s < letters_.size(); ++s) {
    Pauli a = letters_[s], b = other.letters_[s];
    if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
  }
  return anti % 2 == 0;
}

namespace {

// Single-site product a*b = i^power * result.
std::pair<int, Pauli> letter_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {0, b};
  if (b == Pauli::I) return {0, a};
  if (a == b) return {0, Pauli::I};
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  const auto result = static_cast<Pauli>(6 - ia - ib);
  // X->Y->Z->X cyclic order gives +i.
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? 1 : 3, result};
}

const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliProduct pauli_product(const PauliString& a, const PauliString& b) {
  if (a.n_sites() != b.n_sites()) {
    throw DimensionError("pauli_product: " + std::to_string(a.n_sites()) + " vs " +
                         std::to_string(b.n_sites()) + " sites");
  }
  int power = 0;
  std::vector<Pauli> letters(a.n_sites());
  for (std::size_t s = 0; s < a.n_sites(); ++s) {
    auto [p, r] = letter_product(a[s], b[s]);
    power += p;
    letters[s] = r;
  }
  return {kIPowers[power % 4], PauliString(std::move(letters))};
}

ComplexPauliSum product(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_sites() != b.n_sites()) throw DimensionError("product: site counts differ");
  ComplexPauliSum out(a.n_sites());
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      auto [phase, r] = pauli_product(sa, sb);
      out.add_term(r, phase * (ca * cb));
    }
  }
  return out;
}

ComplexPauliSum commutator(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_sites() != b.n_sites()) throw DimensionError("commutator: site counts differ");
  // Accumulate in an unpruned map first so cancellations are resolved before
  // the canonical pruning threshold is applied.
  std::map<PauliString, Complex> acc;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      if (sa.commutes_with(sb)) continue;
      auto [phase, r] = pauli_product(sa, sb);
      acc[r] += 2.0 * phase * (ca * cb);
    }
  }
  ComplexPauliSum out(a.n_sites());
  for (const auto& [s, c] : acc) out.add_term(s, c);
  return out;
}

bool commute(const PauliOperator& a, const PauliOperator& b, double tol) {
  const double scale =
      std::max(1.0, hs_norm(a) * hs_norm(b) / std::sqrt(std::ldexp(1.0, static_cast<int>(a.n_sites()))));
  return hs_norm(commutator(a, b)) <= tol * scale;
}

double trace_inner_product(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_sites() != b.n_sites()) throw DimensionError("trace_inner_product: site counts differ");
  double sum = 0.0;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [s, c] : small.terms()) sum += c * large.coefficient(s);
  return std::ldexp(sum, static_cast<int>(a.n_sites()));
}

namespace {

void check_dense(std::size_t n_sites, const DenseOptions& opts) {
  if (n_sites > opts.max_sites) {
    throw CapacityError("dense realization of " + std::to_string(n_sites) +
                        " sites exceeds cap of " + std::to_string(opts.max_sites));
  }
}

// Entry (x ^ xmask, x) of a Pauli string is i^{ny} (-1)^{popcount(x & zmask)}.
template <typename Coeff>
void accumulate_dense(CMatrix& m, const PauliString& s, Coeff c) {
  const std::uint64_t xm = s.x_mask(), zm = s.z_mask();
  const Complex base = kIPowers[s.y_count() % 4] * Complex(c);
  const auto dim = static_cast<std::uint64_t>(m.rows());
  for (std::uint64_t x = 0; x < dim; ++x) {
    const Complex v = (std::popcount(x & zm) & 1) ? -base : base;
    m(static_cast<Eigen::Index>(x ^ xm), static_cast<Eigen::Index>(x)) += v;
  }
}

template <typename Coeff>
CMatrix dense_impl(const PauliSum<Coeff>& a, const DenseOptions& opts) {
  check_dense(a.n_sites(), opts);
  const auto dim = Eigen::Index{1} << a.n_sites();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& [s, c] : a.terms()) accumulate_dense(m, s, c);
  return m;
}

}  // namespace

CMatrix dense(const PauliString& s) {
  check_dense(s.n_sites(), DenseOptions{});
  const auto dim = Eigen::Index{1} << s.n_sites();
  CMatrix m = CMatrix::Zero(dim, dim);
  accumulate_dense(m, s, 1.0);
  return m;
}

CMatrix dense(const PauliOperator& a, const DenseOptions& opts) { return dense_impl(a, opts); }
CMatrix dense(const ComplexPauliSum& a, const DenseOptions& opts) { return dense_impl(a, opts); }

CVector apply(const PauliString& s, const CVector& v) {
  const auto dim = static_cast<std::uint64_t>(v.size());
  if (dim != (std::uint64_t{1} << s.n_sites())) {
    throw DimensionError("apply: vector of size " + std::to_string(dim) + " for " +
                         std::to_string(s.n_sites()) + "-site string");
  }
  const std::uint64_t xm = s.x_mask(), zm = s.z_mask();
  const Complex base = kIPowers[s.y_count() % 4];
  CVector out(v.size());
  for (std::uint64_t x = 0; x < dim; ++x) {
    const Complex f = (std::popcount(x & zm) & 1) ? -base : base;
    out(static_cast<Eigen::Index>(x ^ xm)) = f * v(static_cast<Eigen::Index>(x));
  }
  return out;
}

CVector apply(const PauliOperator& a, const CVector& v) {
  CVector out = CVector::Zero(v.size());
  for (const auto& [s, c] : a.terms()) out += c * apply(s, v);
  return out;
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  if ((m + m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    CMatrix herm = Complex(0, 1) * m;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double spectral_norm(const PauliOperator& a, const DenseOptions& opts) {
  if (a.is_zero()) return 0.0;
  return spectral_norm(dense(a, opts));
}

double spectral_norm(const ComplexPauliSum& a, const DenseOptions& opts) {
  if (a.is_zero()) return 0.0;
  return spectral_norm(dense(a, opts));
}

PauliOperator combine(std::size_t n_sites, std::span<const PauliString> generators,
                      std::span<const double> coefficients) {
  if (generators.size() != coefficients.size()) {
    throw DimensionError("combine: generator and coefficient counts differ");
  }
  PauliOperator out(n_sites);
  for (std::size_t i = 0; i < generators.size(); ++i) out.add_term(generators[i], coefficients[i]);
  return out;
}

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::all_subsets: return "all_subsets";
    case Geometry::chain_open: return "chain_open";
    case Geometry::chain_periodic: return "chain_periodic";
  }
  return "unknown";
}

Geometry geometry_from_string(std::string_view text) {
  if (text == "all_subsets") return Geometry::all_subsets;
  if (text == "chain_open") return Geometry::chain_open;
  if (text == "chain_periodic") return Geometry::chain_periodic;
  throw DomainError("unknown geometry '" + std::string(text) +
                    "' (expected all_subsets, chain_open or chain_periodic)");
}

namespace {

void combinations(std::size_t n, std::size_t j, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == j) {
    out.push_back(cur);
    return;
  }
  for (std::size_t s = start; s + (j - cur.size()) <= n; ++s) {
    cur.push_back(s);
    combinations(n, j, s + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> site_sets(std::size_t n, std::size_t j, Geometry g) {
  std::vector<std::vector<std::size_t>> sets;
  switch (g) {
    case Geometry::all_subsets: {
      std::vector<std::size_t> cur;
      combinations(n, j, 0, cur, sets);
      break;
    }
    case Geometry::chain_open:
      for (std::size_t start = 0; start + j <= n; ++start) {
        std::vector<std::size_t> w(j);
        for (std::size_t q = 0; q < j; ++q) w[q] = start + q;
        sets.push_back(std::move(w));
      }
      break;
    case Geometry::chain_periodic:
      for (std::size_t start = 0; start < n; ++start) {
        std::vector<std::size_t> w(j);
        for (std::size_t q = 0; q < j; ++q) w[q] = (start + q) % n;
        std::sort(w.begin(), w.end());
        sets.push_back(std::move(w));
      }
      break;
  }
  return sets;
}

}  // namespace

InteractionBasis generate_interaction_basis(std::size_t n, std::size_t j, Geometry geometry) {
  if (n == 0) throw DomainError("interaction basis needs at least one site");
  if (j == 0 || j > n) {
    throw DomainError("interaction locality " + std::to_string(j) + " outside [1, " +
                      std::to_string(n) + "]");
  }
  std::set<PauliString> unique;
  constexpr Pauli kAxes[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  for (const auto& sites : site_sets(n, j, geometry)) {
    std::size_t total = 1;
    for (std::size_t q = 0; q < j; ++q) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      PauliString s(n);
      std::size_t c = code;
      for (std::size_t q = 0; q < j; ++q) {
        s = s.with(sites[q], kAxes[c % 3]);
        c /= 3;
      }
      unique.insert(std::move(s));
    }
  }
  return {n, j, geometry, std::vector<PauliString>(unique.begin(), unique.end())};
}

std::vector<PauliString> interaction_generators(std::size_t n, std::size_t min_j,
                                                std::size_t max_j, Geometry geometry) {
  std::vector<PauliString> out;
  for (std::size_t j = min_j; j <= max_j; ++j) {
    auto basis = generate_interaction_basis(n, j, geometry);
    out.insert(out.end(), basis.generators.begin(), basis.generators.end());
  }
  return out;
}

PauliOperator build_z_chain_target(std::size_t n, std::size_t k, bool periodic,
                                   std::optional<double> c_k) {
  if (k == 0 || k > n) {
    throw DomainError("Z-chain locality " + std::to_string(k) + " outside [1, " +
                      std::to_string(n) + "]");
  }
  PauliOperator h(n);
  const std::size_t windows = periodic ? n : n - k + 1;
  for (std::size_t start = 0; start < windows; ++start) {
    PauliString s(n);
    for (std::size_t q = 0; q < k; ++q) s = s.with((start + q) % n, Pauli::Z);
    h.add_term(s, 1.0);
  }
  const double scale = c_k ? *c_k : 1.0 / hs_norm(h);
  return h * scale;
}

}  // namespace hamsim
