// Copyright 2026 The compwire Authors.
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

#include "compwire/boolfn.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "compwire/errors.h"

namespace compwire {
namespace {

void check_poly_vars(int n) {
  if (n < 1 || n > kMaxPolyVars) {
    throw InputError("number of variables must be in [1, " +
                     std::to_string(kMaxPolyVars) + "], got " +
                     std::to_string(n));
  }
}

void check_same_vars(const MultilinearPolynomial& f,
                     const MultilinearPolynomial& g) {
  if (f.num_vars() != g.num_vars()) {
    throw InputError("dimension mismatch: " + std::to_string(f.num_vars()) +
                     " vs " + std::to_string(g.num_vars()) + " variables");
  }
}

void check_coordinate(int n, int t) {
  if (t < 1 || t > n) {
    throw InputError("coordinate " + std::to_string(t) +
                     " out of range [1, " + std::to_string(n) + "]");
  }
}

Mask low_bits(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

// Unnormalized Walsh-Hadamard butterfly: v[S] <- sum_i v[i] (-1)^|i & S|.
void hadamard_in_place(std::vector<double>& v) {
  const std::size_t size = v.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t j = block; j < block + half; ++j) {
        const double a = v[j];
        const double b = v[j + half];
        v[j] = a + b;
        v[j + half] = a - b;
      }
    }
  }
}

MultilinearPolynomial pruned(int n, MultilinearPolynomial::Coefficients c) {
  std::erase_if(c, [](const auto& kv) {
    return std::abs(kv.second) <= kPruneTolerance;
  });
  return MultilinearPolynomial(n, std::move(c));
}

}  // namespace

void check_enumerable(int n) {
  if (n < 1 || n > kMaxTableVars) {
    throw InputError("dense enumeration supports 1 <= n <= " +
                     std::to_string(kMaxTableVars) + ", got n = " +
                     std::to_string(n));
  }
}

Point point_of_index(int n, std::size_t index) {
  Point point(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    point[static_cast<std::size_t>(j)] = ((index >> j) & 1U) ? -1 : 1;
  }
  return point;
}

std::size_t index_of_point(std::span<const int> point) {
  std::size_t index = 0;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (point[j] == -1) {
      index |= std::size_t{1} << j;
    } else if (point[j] != 1) {
      throw InputError("point coordinates must be +1 or -1");
    }
  }
  return index;
}

TruthTable::TruthTable(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  check_enumerable(n);
  if (values_.size() != (std::size_t{1} << n)) {
    throw InputError("truth table for n = " + std::to_string(n) +
                     " needs " + std::to_string(std::size_t{1} << n) +
                     " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InputError("truth table value at index " + std::to_string(i) +
                       " is not finite");
    }
  }
}

MultilinearPolynomial::MultilinearPolynomial(int n, Coefficients coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  check_poly_vars(n);
  const Mask allowed = low_bits(n);
  for (const auto& [mask, c] : coeffs_) {
    if ((mask & ~allowed) != 0) {
      throw InputError("monomial mask " + std::to_string(mask) +
                       " does not fit in " + std::to_string(n) + " variables");
    }
    if (!std::isfinite(c)) {
      throw InputError("coefficient is not finite");
    }
  }
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0.0; });
}

MultilinearPolynomial MultilinearPolynomial::constant(int n, double value) {
  return MultilinearPolynomial(n, {{Mask{0}, value}});
}

MultilinearPolynomial MultilinearPolynomial::variable(int n, int j) {
  check_poly_vars(n);
  check_coordinate(n, j);
  return MultilinearPolynomial(n, {{Mask{1} << (j - 1), 1.0}});
}

double MultilinearPolynomial::coefficient(Mask mask) const {
  auto it = coeffs_.find(mask);
  return it == coeffs_.end() ? 0.0 : it->second;
}

MultilinearPolynomial wht(const TruthTable& table) {
  std::vector<double> v(table.values().begin(), table.values().end());
  hadamard_in_place(v);
  const double scale = std::ldexp(1.0, -table.num_vars());
  MultilinearPolynomial::Coefficients coeffs;
  for (std::size_t s = 0; s < v.size(); ++s) {
    const double c = v[s] * scale;
    if (std::abs(c) > kPruneTolerance) {
      coeffs.emplace_hint(coeffs.end(), static_cast<Mask>(s), c);
    }
  }
  return MultilinearPolynomial(table.num_vars(), std::move(coeffs));
}

TruthTable inverse_wht(const MultilinearPolynomial& poly) {
  check_enumerable(poly.num_vars());
  std::vector<double> v(std::size_t{1} << poly.num_vars(), 0.0);
  for (const auto& [mask, c] : poly.coefficients()) {
    v[static_cast<std::size_t>(mask)] = c;
  }
  hadamard_in_place(v);
  return TruthTable(poly.num_vars(), std::move(v));
}

double evaluate(const MultilinearPolynomial& poly,
                std::span<const int> point) {
  if (point.size() != static_cast<std::size_t>(poly.num_vars())) {
    throw InputError("point has " + std::to_string(point.size()) +
                     " coordinates, polynomial has " +
                     std::to_string(poly.num_vars()) + " variables");
  }
  const Mask negatives = index_of_point(point);
  double sum = 0.0;
  for (const auto& [mask, c] : poly.coefficients()) {
    sum += (std::popcount(mask & negatives) & 1) ? -c : c;
  }
  return sum;
}

double influence_spectral(const MultilinearPolynomial& poly, int t) {
  check_coordinate(poly.num_vars(), t);
  const Mask bit = Mask{1} << (t - 1);
  double sum = 0.0;
  for (const auto& [mask, c] : poly.coefficients()) {
    if (mask & bit) sum += c * c;
  }
  return sum;
}

double influence_flip(const TruthTable& table, int t) {
  check_coordinate(table.num_vars(), t);
  if (!is_boolean_valued(table)) {
    throw PreconditionError(
        "flip influence requires a Boolean-valued (+1/-1) table");
  }
  const std::size_t bit = std::size_t{1} << (t - 1);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if ((table[i] > 0) != (table[i ^ bit] > 0)) ++changed;
  }
  return static_cast<double>(changed) / static_cast<double>(table.size());
}

std::vector<double> influences(const MultilinearPolynomial& poly) {
  std::vector<double> inf(static_cast<std::size_t>(poly.num_vars()), 0.0);
  for (const auto& [mask, c] : poly.coefficients()) {
    for (Mask m = mask; m != 0; m &= m - 1) {
      inf[static_cast<std::size_t>(std::countr_zero(m))] += c * c;
    }
  }
  return inf;
}

double mean(const MultilinearPolynomial& poly) { return poly.coefficient(0); }

double variance(const MultilinearPolynomial& poly) {
  double sum = 0.0;
  for (const auto& [mask, c] : poly.coefficients()) {
    if (mask != 0) sum += c * c;
  }
  return sum;
}

double squared_norm(const MultilinearPolynomial& poly) {
  double sum = 0.0;
  for (const auto& [mask, c] : poly.coefficients()) sum += c * c;
  return sum;
}

int degree(const MultilinearPolynomial& poly) {
  int k = 0;
  for (const auto& [mask, c] : poly.coefficients()) {
    k = std::max(k, std::popcount(mask));
  }
  return k;
}

int term_count(const MultilinearPolynomial& poly) {
  return static_cast<int>(poly.coefficients().size());
}

double max_influence(const MultilinearPolynomial& poly) {
  const auto inf = influences(poly);
  return inf.empty() ? 0.0 : *std::max_element(inf.begin(), inf.end());
}

InfluenceProfile influence_profile(const MultilinearPolynomial& poly) {
  InfluenceProfile profile;
  profile.influences = influences(poly);
  profile.max_influence =
      *std::max_element(profile.influences.begin(), profile.influences.end());
  profile.variance = variance(poly);
  profile.mean = mean(poly);
  return profile;
}

MultilinearPolynomial sub(const MultilinearPolynomial& f,
                          const MultilinearPolynomial& g) {
  check_same_vars(f, g);
  auto coeffs = f.coefficients();
  for (const auto& [mask, c] : g.coefficients()) coeffs[mask] -= c;
  return pruned(f.num_vars(), std::move(coeffs));
}

MultilinearPolynomial mul(const MultilinearPolynomial& f,
                          const MultilinearPolynomial& g) {
  check_same_vars(f, g);
  MultilinearPolynomial::Coefficients coeffs;
  for (const auto& [a, ca] : f.coefficients()) {
    for (const auto& [b, cb] : g.coefficients()) {
      coeffs[a ^ b] += ca * cb;
    }
  }
  return pruned(f.num_vars(), std::move(coeffs));
}

MultilinearPolynomial mul_pointwise(const MultilinearPolynomial& f,
                                    const MultilinearPolynomial& g) {
  check_same_vars(f, g);
  const TruthTable tf = inverse_wht(f);
  const TruthTable tg = inverse_wht(g);
  std::vector<double> product(tf.size());
  for (std::size_t i = 0; i < product.size(); ++i) product[i] = tf[i] * tg[i];
  return wht(TruthTable(f.num_vars(), std::move(product)));
}

bool is_boolean_valued(const TruthTable& table) {
  return std::all_of(table.values().begin(), table.values().end(),
                     [](double v) {
                       return std::abs(v - 1.0) <= kBooleanTolerance ||
                              std::abs(v + 1.0) <= kBooleanTolerance;
                     });
}

bool is_boolean_valued(const MultilinearPolynomial& poly) {
  return is_boolean_valued(inverse_wht(poly));
}

}  // namespace compwire
