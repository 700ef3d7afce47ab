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

// Test-only oracles and random generators. Oracles here evaluate the
// defining sums directly (explicit +-1 products over enumerated points) and
// share no code path with the butterfly or the sparse arithmetic.

#ifndef COMPWIRE_TESTS_TEST_SUPPORT_H_
#define COMPWIRE_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "compwire/boolfn.h"

namespace compwire::testing {

// x_j of point index i under the shared convention, written out directly.
inline int coordinate(std::size_t index, int j) {
  return ((index >> (j - 1)) & 1U) ? -1 : 1;
}

inline double character(std::size_t index, Mask subset, int n) {
  double prod = 1.0;
  for (int j = 1; j <= n; ++j) {
    if ((subset >> (j - 1)) & 1U) prod *= coordinate(index, j);
  }
  return prod;
}

// c(S) = 2^-n sum_x f(x) x^S by direct summation, O(4^n).
inline std::vector<double> brute_fourier(const std::vector<double>& table,
                                         int n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> out(size, 0.0);
  for (std::size_t s = 0; s < size; ++s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      sum += table[i] * character(i, static_cast<Mask>(s), n);
    }
    out[s] = sum / static_cast<double>(size);
  }
  return out;
}

// sum_S c(S) prod_{j in S} x_j for an explicit point.
inline double brute_evaluate(const MultilinearPolynomial& poly,
                             const std::vector<int>& point) {
  double sum = 0.0;
  for (const auto& [mask, c] : poly.coefficients()) {
    double term = c;
    for (int j = 1; j <= poly.num_vars(); ++j) {
      if ((mask >> (j - 1)) & 1U) term *= point[static_cast<std::size_t>(j - 1)];
    }
    sum += term;
  }
  return sum;
}

// Values of a function given as a lambda over explicit points.
inline std::vector<double> enumerate(
    int n, const std::function<double(const std::vector<int>&)>& fn) {
  std::vector<double> out(std::size_t{1} << n);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<int> x(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) x[static_cast<std::size_t>(j - 1)] = coordinate(i, j);
    out[i] = fn(x);
  }
  return out;
}

inline std::vector<double> random_values(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> v(std::size_t{1} << n);
  for (auto& x : v) x = dist(rng);
  return v;
}

inline std::vector<double> random_boolean_values(std::mt19937_64& rng, int n) {
  std::bernoulli_distribution coin(0.5);
  std::vector<double> v(std::size_t{1} << n);
  for (auto& x : v) x = coin(rng) ? 1.0 : -1.0;
  return v;
}

// Random sparse polynomial with at most `terms` monomials of size <=
// max_degree and coefficients uniform in [-1, 1].
inline MultilinearPolynomial random_poly(std::mt19937_64& rng, int n,
                                         int max_degree, int terms) {
  std::uniform_int_distribution<int> var(0, n - 1);
  std::uniform_int_distribution<int> size(0, max_degree);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  MultilinearPolynomial::Coefficients c;
  for (int t = 0; t < terms; ++t) {
    Mask mask = 0;
    const int k = size(rng);
    for (int i = 0; i < k; ++i) mask |= Mask{1} << var(rng);
    c[mask] = coeff(rng);
  }
  return MultilinearPolynomial(n, std::move(c));
}

// Rescales the non-constant part so that the variance equals `target`.
inline MultilinearPolynomial with_variance(const MultilinearPolynomial& p,
                                           double target) {
  double var = 0.0;
  for (const auto& [mask, c] : p.coefficients()) {
    if (mask != 0) var += c * c;
  }
  if (var == 0.0) return p;
  const double scale = std::sqrt(target / var);
  MultilinearPolynomial::Coefficients c;
  for (const auto& [mask, v] : p.coefficients()) {
    c[mask] = mask == 0 ? v : v * scale;
  }
  return MultilinearPolynomial(p.num_vars(), std::move(c));
}

}  // namespace compwire::testing

#endif  // COMPWIRE_TESTS_TEST_SUPPORT_H_
