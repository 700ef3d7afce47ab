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

#include "compwire/invariance.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "compwire/errors.h"
#include "compwire/funcdsl.h"
#include "test_support.h"

namespace compwire {
namespace {

MultilinearPolynomial maj3() {
  return parse_poly({"1/2*(x1 + x2 + x3) - 1/2*x1*x2*x3", std::nullopt});
}

MultilinearPolynomial chain(int n) {
  std::string text = "1/" + std::to_string(n) + "*(";
  for (int i = 1; i < n; ++i) {
    if (i > 1) text += " + ";
    text += "x" + std::to_string(i) + "*x" + std::to_string(i + 1);
  }
  return parse_poly({text + ")", n});
}

MultilinearPolynomial average(int n) {
  std::string text = "1/" + std::to_string(n) + "*(";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) text += " + ";
    text += "x" + std::to_string(i);
  }
  return parse_poly({text + ")", n});
}

MultilinearPolynomial wiretap_f() { return parse_poly({"x1*x2*x3", 3}); }
MultilinearPolynomial wiretap_g() {
  return parse_poly({"1/4*(1 - x1 - x2 - x3 + x1*x2 + x1*x3 + x2*x3 + 3*x1*x2*x3)", 3});
}

TEST(TestFunctions, Catalog) {
  EXPECT_EQ(test_function("identity").C, 0.0);
  EXPECT_EQ(test_function("square").C, 0.0);
  EXPECT_EQ(test_function("cos").C, 1.0);
  EXPECT_EQ(test_function("sin").C, 1.0);
  EXPECT_EQ(test_function("quartic").C, 24.0);
  EXPECT_EQ(test_function("quartic").eval(2.0), 16.0);
  EXPECT_EQ(test_function("square").eval(-3.0), 9.0);
  EXPECT_THROW(test_function("tan"), InputError);
  EXPECT_EQ(test_function_catalog().size(), 5U);
}

TEST(BasicBound, Examples) {
  EXPECT_EQ(basic_bound(MultilinearPolynomial(3), 1.0), 0.0);
  EXPECT_DOUBLE_EQ(basic_bound(maj3(), 1.0), 45.5625);
  EXPECT_DOUBLE_EQ(basic_bound(MultilinearPolynomial::variable(2, 1), 1.0), 0.75);
  EXPECT_DOUBLE_EQ(basic_bound(maj3(), 24.0), 24.0 * 45.5625);
}

TEST(CorollaryBound, Maj3) {
  EXPECT_EQ(corollary_bound(maj3(), 1.0, 0.5), 91.125);
  EXPECT_LE(corollary_bound(maj3(), 1.0, 0.5), 92.0);
}

TEST(CorollaryBound, Preconditions) {
  // Var = 4 > 1.
  EXPECT_THROW(corollary_bound(parse_poly({"2*x1", 1}), 1.0, 4.0), PreconditionError);
  // Influence 1/2 exceeds the claimed epsilon.
  EXPECT_THROW(corollary_bound(maj3(), 1.0, 0.25), PreconditionError);
  EXPECT_THROW(corollary_bound(maj3(), -1.0, 0.5), InputError);
}

TEST(CorollaryBound, DominatesBasicOnRandom) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::with_variance(testing::random_poly(rng, 8, 3, 6), 0.5);
    const double eps = max_influence(p);
    // sum Inf^2 <= eps * sum Inf <= eps * k * Var <= k * eps.
    EXPECT_GE(corollary_bound(p, 1.0, eps) + 1e-9, basic_bound(p, 1.0));
  }
}

TEST(AdditiveBound, ChainMinusAverage) {
  for (int n : {4, 8, 16}) {
    const AdditiveBoundDetail d = additive_bound_detail(chain(n), average(n), 1.0);
    EXPECT_EQ(d.k1, 2);
    EXPECT_EQ(d.k2, 1);
    EXPECT_EQ(d.k, 2);
    EXPECT_NEAR(d.epsilon, 2.0 / (n * n), 1e-15);
    EXPECT_LE(d.variance_f, 1.0 / n);
    EXPECT_LE(d.variance_g, 1.0 / n);
    EXPECT_NEAR(d.bound, 108.0 / (n * n), 1e-12);
  }
}

TEST(AdditiveBound, SmallExample) {
  EXPECT_NEAR(additive_bound(parse_poly({"1/4*x1*x2", 3}), parse_poly({"1/4*x3", 3}), 1.0),
              27.0 / 8, 1e-12);
}

TEST(AdditiveBound, RequiresSmallVariance) {
  EXPECT_THROW(additive_bound(parse_poly({"x1", 2}), parse_poly({"1/4*x2", 2}), 1.0),
               PreconditionError);
  EXPECT_THROW(additive_bound(parse_poly({"1/4*x2", 2}), parse_poly({"x1", 2}), 1.0),
               PreconditionError);
}

TEST(MultiplicativeBound, WiretapPair) {
  const MultiplicativeBoundDetail d = multiplicative_bound_detail(wiretap_f(), wiretap_g(), 1.0);
  EXPECT_EQ(d.k1, 3);
  EXPECT_EQ(d.k2, 3);
  EXPECT_EQ(d.k, 9);
  EXPECT_EQ(d.l1, 1);
  EXPECT_EQ(d.l2, 8);
  EXPECT_EQ(d.l, 8);
  EXPECT_EQ(d.epsilon, 1.0);
  EXPECT_NEAR(d.bound / 9298091736.0, 1.0, 1e-3);
  EXPECT_EQ(d.product_degree, 3);
  EXPECT_NEAR(d.product_degree_bound, 5832.0, 1e-9);
  EXPECT_GT(d.bound, 1e5);
}

TEST(MultiplicativeBound, DictatorPair) {
  const auto x1 = MultilinearPolynomial::variable(1, 1);
  EXPECT_NEAR(multiplicative_bound(x1, x1, 1.0), 3.0, 1e-12);
  EXPECT_NEAR(multiplicative_bound(x1, x1, 2.0), 6.0, 1e-12);
}

TEST(MultiplicativeBound, RequiresBoolean) {
  EXPECT_THROW(multiplicative_bound(parse_poly({"1/2*x1", 1}), parse_poly({"x1", 1}), 1.0),
               PreconditionError);
}

TEST(ExpectExact, Examples) {
  EXPECT_EQ(expect_exact(MultilinearPolynomial(2), test_function("cos")), 1.0);
  // Maj3 is +-1 valued, so E[cos(Maj3)] = cos(1).
  EXPECT_NEAR(expect_exact(maj3(), test_function("cos")), 0.5403023058681398, 1e-15);
  EXPECT_NEAR(expect_exact(maj3(), test_function("identity")), 0.0, 1e-15);
  // E[F^2] = sum c^2 by Parseval.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_poly(rng, 6, 3, 8);
    EXPECT_NEAR(expect_exact(p, test_function("square")), squared_norm(p), 1e-12);
  }
}

TEST(ExpectGaussianMc, ZeroPolynomial) {
  const MonteCarloEstimate e =
      expect_gaussian_mc(MultilinearPolynomial(3), test_function("cos"), 5000, 0, 1);
  EXPECT_EQ(e.estimate, 1.0);
  EXPECT_EQ(e.standard_error, 0.0);
  EXPECT_EQ(e.samples, 5000U);
}

TEST(ExpectGaussianMc, MatchesAnalyticMoments) {
  // For a multilinear F, E[F(y)] = c(empty) and E[F(y)^2] = sum c^2 under
  // independent standard Gaussians, exactly as on the cube.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = testing::random_poly(rng, 5, 3, 6);
    const auto id = expect_gaussian_mc(p, test_function("identity"), 200000, trial, 1);
    EXPECT_NEAR(id.estimate, p.coefficient(0), 5 * id.standard_error + 1e-12);
    const auto sq = expect_gaussian_mc(p, test_function("square"), 200000, trial, 1);
    EXPECT_NEAR(sq.estimate, squared_norm(p), 5 * sq.standard_error + 1e-12);
  }
}

TEST(ExpectGaussianMc, GaussianCosine) {
  // x1 ~ N(0,1): E[cos y] = exp(-1/2).
  const auto e = expect_gaussian_mc(MultilinearPolynomial::variable(1, 1),
                                    test_function("cos"), 400000, 9, 1);
  EXPECT_NEAR(e.estimate, std::exp(-0.5), 5 * e.standard_error);
}

TEST(ExpectGaussianMc, DeterministicAcrossWorkers) {
  const auto p = maj3();
  const auto a = expect_gaussian_mc(p, test_function("sin"), 50001, 42, 1);
  const auto b = expect_gaussian_mc(p, test_function("sin"), 50001, 42, 4);
  const auto c = expect_gaussian_mc(p, test_function("sin"), 50001, 42, 3);
  const auto d = expect_gaussian_mc(p, test_function("sin"), 50001, 42, 1);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.estimate, c.estimate);
  EXPECT_EQ(a.estimate, d.estimate);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_EQ(a.standard_error, c.standard_error);
  const auto other = expect_gaussian_mc(p, test_function("sin"), 50001, 43, 1);
  EXPECT_NE(a.estimate, other.estimate);
}

TEST(ExpectGaussianMc, RejectsTooFewSamples) {
  EXPECT_THROW(expect_gaussian_mc(maj3(), test_function("cos"), 999, 0), PreconditionError);
}

TEST(VerifyInvariance, Maj3AndChain) {
  const auto& cos = test_function("cos");
  const auto maj = verify_invariance(maj3(), cos, corollary_bound(maj3(), 1.0, 0.5),
                                     200000, 0, 4.0, 1);
  EXPECT_TRUE(maj.pass);
  EXPECT_NEAR(maj.delta, std::abs(maj.lhs - maj.rhs.estimate), 1e-15);
  EXPECT_EQ(maj.z, 4.0);

  const auto noise = sub(chain(8), average(8));
  const auto rep = verify_invariance(noise, cos, 108.0 / 64, 200000, 0, 4.0, 1);
  EXPECT_TRUE(rep.pass);
}

TEST(VerifyInvariance, ZeroCBoundStillPassesForSquare) {
  std::mt19937_64 rng(23);
  const auto p = testing::random_poly(rng, 6, 3, 5);
  const auto rep = verify_invariance(p, test_function("square"), 0.0, 200000, 3, 4.0, 1);
  EXPECT_EQ(rep.bound, 0.0);
  EXPECT_TRUE(rep.pass);
}

TEST(VerifyInvariance, PassIsMonotoneInBound) {
  const auto p = parse_poly({"x1*x2 + x3", 3});
  const auto& quartic = test_function("quartic");
  bool seen_pass = false;
  for (double bound : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const auto rep = verify_invariance(p, quartic, bound, 20000, 1, 4.0, 1);
    if (seen_pass) {
      EXPECT_TRUE(rep.pass) << bound;
    }
    seen_pass = seen_pass || rep.pass;
  }
  EXPECT_TRUE(seen_pass);
}

TEST(VerifyInvariance, FailsAgainstTooSmallBound) {
  // Quartic on x1 x2: E_cube = 1, E_gauss = 9. Bound 0 with z = 4 must fail.
  const auto rep = verify_invariance(parse_poly({"x1*x2", 2}), test_function("quartic"), 0.0,
                                     100000, 0, 4.0, 1);
  EXPECT_EQ(rep.lhs, 1.0);
  EXPECT_FALSE(rep.pass);
}

TEST(Moments, Rademacher) {
  const MomentReport r = hypothesis_check(rademacher(), 100000, 0, 1);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.moments, (std::array<double, 4>{0, 1, 0, 1}));
  EXPECT_EQ(r.empirical[1], 1.0);
  EXPECT_EQ(r.empirical[3], 1.0);
  EXPECT_NEAR(r.empirical[0], 0.0, 5 * r.empirical_standard_error[0]);
  EXPECT_TRUE(r.all_pass());
}

TEST(Moments, Gaussian) {
  const MomentReport r = hypothesis_check(standard_gaussian(), 100000, 0, 1);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.moments, (std::array<double, 4>{0, 1, 0, 3}));
  const std::array<double, 4> truth{0, 1, 0, 3};
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(r.empirical[k], truth[k], 5 * r.empirical_standard_error[k]) << k;
  }
}

TEST(Moments, UniformInterval) {
  const MomentReport r = hypothesis_check(uniform_interval(), 100000, 2, 1);
  EXPECT_TRUE(r.all_pass());
  EXPECT_NEAR(r.empirical[3], 1.8, 5 * r.empirical_standard_error[3]);
}

TEST(Moments, ViolatingTwoPoint) {
  const MomentReport r = hypothesis_check(two_point(2.0), 100000, 0, 1);
  EXPECT_FALSE(r.pass[1]);
  EXPECT_FALSE(r.pass[3]);  // E[x^4] = 16 > 9
  EXPECT_TRUE(r.pass[0]);
  EXPECT_FALSE(r.all_pass());
}

TEST(Moments, ByNameAndErrors) {
  EXPECT_EQ(distribution_by_name("two-point:0.5").name, two_point(0.5).name);
  EXPECT_THROW(distribution_by_name("cauchy"), InputError);
  EXPECT_THROW(distribution_by_name("two-point:abc"), InputError);
  EXPECT_THROW(hypothesis_check(rademacher(), 9999, 0), PreconditionError);
}

TEST(Moments, DeterministicAcrossWorkers) {
  const auto a = hypothesis_check(standard_gaussian(), 30000, 7, 1);
  const auto b = hypothesis_check(standard_gaussian(), 30000, 7, 4);
  EXPECT_EQ(a.empirical, b.empirical);
  EXPECT_EQ(a.empirical_standard_error, b.empirical_standard_error);
}

TEST(LemmaSuite, WiretapPair) {
  const LemmaReport r = lemma_suite(wiretap_f(), wiretap_g());
  EXPECT_EQ(r.epsilon, 1.0);
  EXPECT_EQ(r.l1, 1);
  EXPECT_EQ(r.l2, 8);
  // Var[f], Var[g] exceed 1/4, so the difference lemmas do not apply.
  EXPECT_FALSE(r.variance_of_difference.applicable);
  EXPECT_FALSE(r.variance_of_difference.unmet_precondition.empty());
  EXPECT_TRUE(r.influence_of_product.applicable);
  EXPECT_TRUE(r.influence_of_product.pass);
  EXPECT_TRUE(r.all_pass());
}

TEST(LemmaSuite, ChainMinusAverage) {
  const LemmaReport r = lemma_suite(chain(8), average(8));
  ASSERT_TRUE(r.variance_of_difference.applicable);
  ASSERT_TRUE(r.influence_of_difference.applicable);
  EXPECT_FALSE(r.influence_of_product.applicable);
  EXPECT_NEAR(r.variance_of_difference.lhs, variance(sub(chain(8), average(8))), 1e-15);
  EXPECT_NEAR(r.influence_of_difference.bound, 4 * r.epsilon, 1e-15);
  EXPECT_TRUE(r.all_pass());
}

TEST(LemmaSuite, RandomPairsNeverViolate) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> var(0.0, 0.25);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 7;
    const auto f = testing::with_variance(testing::random_poly(rng, n, 3, 5), var(rng));
    const auto g = testing::with_variance(testing::random_poly(rng, n, 3, 5), var(rng));
    const LemmaReport r = lemma_suite(f, g);
    EXPECT_TRUE(r.variance_of_difference.applicable);
    EXPECT_TRUE(r.all_pass()) << trial;
    const auto bf = TruthTable(n, testing::random_boolean_values(rng, n));
    const auto bg = TruthTable(n, testing::random_boolean_values(rng, n));
    const LemmaReport b = lemma_suite(wht(bf), wht(bg));
    EXPECT_TRUE(b.influence_of_product.applicable);
    EXPECT_TRUE(b.all_pass()) << trial;
  }
}

TEST(LemmaSuite, MismatchedN) {
  EXPECT_THROW(lemma_suite(MultilinearPolynomial(2), MultilinearPolynomial(3)), InputError);
}

}  // namespace
}  // namespace compwire
