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

// Invariance-principle machinery: closed-form bounds on
// |E[psi(F(x))] - E[psi(F(y))]| for uniform +-1 inputs x versus Gaussian
// inputs y, exact evaluation of the +-1 side, seeded Monte Carlo for the
// Gaussian side, moment checks on input laws, and numeric checks of the
// variance / influence lemmas for f - g and f g.

#ifndef COMPWIRE_INVARIANCE_H_
#define COMPWIRE_INVARIANCE_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "compwire/boolfn.h"

namespace compwire {

// A smooth test function psi with C = sup |psi''''|.
struct TestFunction {
  std::string name;
  std::function<double(double)> eval;
  double C = 0.0;
};

// identity (C=0), square (C=0), cos (C=1), sin (C=1), quartic t^4 (C=24).
std::span<const TestFunction> test_function_catalog();
// Throws InputError for unknown names.
const TestFunction& test_function(std::string_view name);

// A law for a single coordinate. `sample(seed, index)` must be a pure
// function of its arguments.
struct InputDistribution {
  std::string name;
  std::function<double(std::uint64_t seed, std::uint64_t index)> sample;
  std::optional<std::array<double, 4>> exact_moments;
};

InputDistribution rademacher();
InputDistribution standard_gaussian();
// Uniform on {-a, a}; a != 1 breaks the unit second moment.
InputDistribution two_point(double a);
// Continuous uniform on [-sqrt 3, sqrt 3]: moments (0, 1, 0, 9/5).
InputDistribution uniform_interval();
// "rademacher", "gaussian", "two-point:<a>", "uniform".
InputDistribution distribution_by_name(std::string_view name);

// Moments E[x^k], k = 1..4, against the conditions E[x] = 0, E[x^2] = 1,
// E[x^3] = 0, E[x^4] <= 9. `moments` are the exact values when the law
// declares them and the empirical ones otherwise; each condition passes
// within 5 standard errors of `moments`.
struct MomentReport {
  std::string distribution;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool exact = false;
  std::array<double, 4> moments{};
  std::array<double, 4> standard_error{};
  std::array<double, 4> empirical{};
  std::array<double, 4> empirical_standard_error{};
  std::array<bool, 4> pass{};

  bool all_pass() const { return pass[0] && pass[1] && pass[2] && pass[3]; }
};

// samples >= 10^4.
MomentReport hypothesis_check(const InputDistribution& dist,
                              std::uint64_t samples, std::uint64_t seed,
                              unsigned workers = 0);

// (C/12) 9^k sum_t Inf_t[F]^2 with k = degree(F).
double basic_bound(const MultilinearPolynomial& poly, double C);

// (C/12) k 9^k epsilon. Requires Var[F] <= 1 and every Inf_t[F] <= epsilon;
// throws PreconditionError naming the violated quantity.
double corollary_bound(const MultilinearPolynomial& poly, double C,
                       double epsilon);

struct AdditiveBoundDetail {
  int k1 = 0;
  int k2 = 0;
  int k = 0;  // k1 * k2
  int noise_degree = 0;  // degree(f - g), for reference
  double epsilon = 0.0;
  double variance_f = 0.0;
  double variance_g = 0.0;
  double bound = 0.0;
};

// (C/3) k 9^k epsilon with k = k1 k2 and epsilon the largest influence of
// f or g. Requires Var[f] <= 1/4 and Var[g] <= 1/4.
AdditiveBoundDetail additive_bound_detail(const MultilinearPolynomial& f,
                                          const MultilinearPolynomial& g,
                                          double C);
double additive_bound(const MultilinearPolynomial& f,
                      const MultilinearPolynomial& g, double C);

struct MultiplicativeBoundDetail {
  int k1 = 0;
  int k2 = 0;
  int k = 0;  // k1 * k2
  int l1 = 0;
  int l2 = 0;
  int l = 0;  // l1 * l2
  double epsilon = 0.0;
  // (C/3) k l 9^k epsilon.
  double bound = 0.0;
  // Same formula with k replaced by degree(f g).
  int product_degree = 0;
  double product_degree_bound = 0.0;
};

// Requires Boolean-valued f and g.
MultiplicativeBoundDetail multiplicative_bound_detail(
    const MultilinearPolynomial& f, const MultilinearPolynomial& g, double C);
double multiplicative_bound(const MultilinearPolynomial& f,
                            const MultilinearPolynomial& g, double C);

// 2^-n sum_x psi(F(x)) over all +-1 points.
double expect_exact(const MultilinearPolynomial& poly, const TestFunction& psi);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

// Mean of psi(F(y)) over `samples` i.i.d. standard Gaussian vectors y
// (rng.h scheme). Samples are reduced in fixed blocks merged along a fixed
// binary tree, so the result is bit-identical for every worker count.
// workers = 0 uses the hardware concurrency. samples >= 1000.
MonteCarloEstimate expect_gaussian_mc(const MultilinearPolynomial& poly,
                                      const TestFunction& psi,
                                      std::uint64_t samples,
                                      std::uint64_t seed,
                                      unsigned workers = 0);

struct InvarianceReport {
  double lhs = 0.0;
  MonteCarloEstimate rhs;
  double delta = 0.0;
  double bound = 0.0;
  double z = 0.0;
  bool pass = false;  // delta <= bound + z * stderr
};

InvarianceReport verify_invariance(const MultilinearPolynomial& poly,
                                   const TestFunction& psi, double bound,
                                   std::uint64_t samples, std::uint64_t seed,
                                   double z = 4.0, unsigned workers = 0);

struct LemmaCheck {
  std::string name;
  bool applicable = false;
  std::string unmet_precondition;
  double lhs = 0.0;  // maximized over coordinates where relevant
  double bound = 0.0;
  bool pass = false;
};

struct LemmaReport {
  double epsilon = 0.0;
  int l1 = 0;
  int l2 = 0;
  LemmaCheck variance_of_difference;   // Var[f-g] <= 1
  LemmaCheck influence_of_difference;  // Inf_t[f-g] <= 4 eps
  LemmaCheck influence_of_product;     // Inf_t[fg] <= 4 eps l1 l2

  // No applicable lemma is violated.
  bool all_pass() const;
};

inline constexpr double kLemmaSlack = 1e-10;

LemmaReport lemma_suite(const MultilinearPolynomial& f,
                        const MultilinearPolynomial& g);

}  // namespace compwire

#endif  // COMPWIRE_INVARIANCE_H_
