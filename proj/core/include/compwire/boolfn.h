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

// Real-valued Boolean functions f : {-1,1}^n -> R in two views: a dense
// truth table and the sparse Fourier (multilinear) expansion.
//
// Point convention, shared by every module: table index i encodes the point
// x with x_j = +1 when bit (j-1) of i is clear and x_j = -1 when it is set.
// With this convention the character x^S evaluated at index i equals
// (-1)^popcount(i & S), so the Walsh-Hadamard butterfly maps a table
// directly onto Fourier coefficients.
//
// Coordinates t are 1-based throughout the public API.

#ifndef COMPWIRE_BOOLFN_H_
#define COMPWIRE_BOOLFN_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace compwire {

// Bit (j-1) set means variable x_j belongs to the monomial.
using Mask = std::uint64_t;

// A point of {-1,1}^n, entries are +1 or -1.
using Point = std::vector<int>;

inline constexpr int kMaxTableVars = 24;
inline constexpr int kMaxPolyVars = 64;
inline constexpr double kPruneTolerance = 1e-12;
inline constexpr double kBooleanTolerance = 1e-9;

// Throws InputError unless 1 <= n <= kMaxTableVars.
void check_enumerable(int n);

Point point_of_index(int n, std::size_t index);
std::size_t index_of_point(std::span<const int> point);

class TruthTable {
 public:
  // values.size() must be exactly 2^n and every value finite.
  TruthTable(int n, std::vector<double> values);

  // Tabulates fn(point) over all 2^n points.
  template <typename Fn>
  static TruthTable tabulate(int n, Fn&& fn) {
    check_enumerable(n);
    std::vector<double> values(std::size_t{1} << n);
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = static_cast<double>(fn(point_of_index(n, i)));
    }
    return TruthTable(n, std::move(values));
  }

  int num_vars() const { return n_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t index) const { return values_[index]; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int n_;
  std::vector<double> values_;
};

// Sparse Fourier expansion sum_S c(S) x^S. Only nonzero coefficients are
// stored; degree is the largest stored monomial size.
class MultilinearPolynomial {
 public:
  using Coefficients = std::map<Mask, double>;

  explicit MultilinearPolynomial(int n) : MultilinearPolynomial(n, {}) {}
  MultilinearPolynomial(int n, Coefficients coeffs);

  static MultilinearPolynomial constant(int n, double value);
  // The dictator function x_j.
  static MultilinearPolynomial variable(int n, int j);

  int num_vars() const { return n_; }
  const Coefficients& coefficients() const { return coeffs_; }
  double coefficient(Mask mask) const;
  bool is_zero() const { return coeffs_.empty(); }

  friend bool operator==(const MultilinearPolynomial&,
                         const MultilinearPolynomial&) = default;

 private:
  int n_;
  Coefficients coeffs_;
};

// Forward transform c(S) = 2^-n sum_x f(x) x^S via an in-place butterfly,
// O(n 2^n). Coefficients with |c| <= kPruneTolerance are dropped.
MultilinearPolynomial wht(const TruthTable& table);

// Evaluates the expansion at every point. Requires n <= kMaxTableVars.
TruthTable inverse_wht(const MultilinearPolynomial& poly);

double evaluate(const MultilinearPolynomial& poly, std::span<const int> point);

// Inf_t[f] = sum over S containing t of c(S)^2.
double influence_spectral(const MultilinearPolynomial& poly, int t);

// Pr_x[f(x) != f(x with coordinate t flipped)]. The table must be
// Boolean-valued within kBooleanTolerance.
double influence_flip(const TruthTable& table, int t);

// All n spectral influences, index t-1.
std::vector<double> influences(const MultilinearPolynomial& poly);

double mean(const MultilinearPolynomial& poly);
double variance(const MultilinearPolynomial& poly);
// sum_S c(S)^2 = E[f^2].
double squared_norm(const MultilinearPolynomial& poly);
int degree(const MultilinearPolynomial& poly);
int term_count(const MultilinearPolynomial& poly);
double max_influence(const MultilinearPolynomial& poly);

struct InfluenceProfile {
  std::vector<double> influences;
  double max_influence = 0.0;
  double variance = 0.0;
  double mean = 0.0;
};

InfluenceProfile influence_profile(const MultilinearPolynomial& poly);

MultilinearPolynomial sub(const MultilinearPolynomial& f,
                          const MultilinearPolynomial& g);

// Product via XOR convolution of the coefficient maps, O(l1 * l2).
MultilinearPolynomial mul(const MultilinearPolynomial& f,
                          const MultilinearPolynomial& g);

// Product via pointwise multiplication of truth tables followed by wht.
// Reference path for mul; requires n <= kMaxTableVars.
MultilinearPolynomial mul_pointwise(const MultilinearPolynomial& f,
                                    const MultilinearPolynomial& g);

bool is_boolean_valued(const TruthTable& table);
bool is_boolean_valued(const MultilinearPolynomial& poly);

}  // namespace compwire

#endif  // COMPWIRE_BOOLFN_H_
