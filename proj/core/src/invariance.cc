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

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "compwire/errors.h"
#include "compwire/rng.h"

namespace compwire {
namespace {

constexpr std::uint64_t kBlockSize = 4096;
constexpr double kPreconditionSlack = 1e-12;

// Running count / mean / sum of squared deviations.
struct Accumulator {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  static Accumulator merge(const Accumulator& a, const Accumulator& b) {
    if (a.count == 0.0) return b;
    if (b.count == 0.0) return a;
    Accumulator out;
    out.count = a.count + b.count;
    const double delta = b.mean - a.mean;
    out.mean = a.mean + delta * (b.count / out.count);
    out.m2 = a.m2 + b.m2 + delta * delta * (a.count * b.count / out.count);
    return out;
  }

  double standard_error() const {
    if (count < 2.0) return 0.0;
    return std::sqrt(m2 / (count - 1.0) / count);
  }
};

template <std::size_t K>
using Accumulators = std::array<Accumulator, K>;

template <std::size_t K>
Accumulators<K> merge_range(const std::vector<Accumulators<K>>& blocks,
                            std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  const auto left = merge_range(blocks, lo, mid);
  const auto right = merge_range(blocks, mid, hi);
  Accumulators<K> out;
  for (std::size_t k = 0; k < K; ++k) {
    out[k] = Accumulator::merge(left[k], right[k]);
  }
  return out;
}

// Evaluates fn(index) -> std::array<double, K> for index in [0, samples)
// and reduces deterministically. Block b covers indices
// [b * kBlockSize, (b + 1) * kBlockSize); blocks are merged along a fixed
// binary tree, so `workers` only changes who computes which block.
template <std::size_t K, typename Fn>
Accumulators<K> reduce_samples(std::uint64_t samples, unsigned workers,
                               const Fn& fn) {
  const std::size_t blocks =
      static_cast<std::size_t>((samples + kBlockSize - 1) / kBlockSize);
  std::vector<Accumulators<K>> partial(blocks);
  if (blocks == 0) return {};
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, blocks));

  auto run = [&](unsigned worker) {
    for (std::size_t b = worker; b < blocks; b += workers) {
      const std::uint64_t begin = b * kBlockSize;
      const std::uint64_t end = std::min(samples, begin + kBlockSize);
      Accumulators<K> acc;
      for (std::uint64_t i = begin; i < end; ++i) {
        const std::array<double, K> values = fn(i);
        for (std::size_t k = 0; k < K; ++k) acc[k].add(values[k]);
      }
      partial[b] = acc;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
  }
  return merge_range(partial, 0, blocks);
}

double pow9(int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= 9.0;
  return out;
}

void check_C(double C) {
  if (!std::isfinite(C) || C < 0.0) {
    throw InputError("C must be finite and non-negative");
  }
}

// Sparse polynomial in a layout suited to repeated evaluation.
class CompiledPolynomial {
 public:
  explicit CompiledPolynomial(const MultilinearPolynomial& poly)
      : n_(poly.num_vars()) {
    for (const auto& [mask, c] : poly.coefficients()) {
      coeffs_.push_back(c);
      for (Mask m = mask; m != 0; m &= m - 1) {
        vars_.push_back(static_cast<std::uint8_t>(std::countr_zero(m)));
      }
      offsets_.push_back(vars_.size());
    }
  }

  int num_vars() const { return n_; }

  double operator()(const double* y) const {
    double sum = 0.0;
    std::size_t v = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      double term = coeffs_[t];
      for (; v < offsets_[t]; ++v) term *= y[vars_[v]];
      sum += term;
    }
    return sum;
  }

 private:
  int n_;
  std::vector<double> coeffs_;
  std::vector<std::uint8_t> vars_;
  std::vector<std::size_t> offsets_;
};

std::vector<TestFunction> make_catalog() {
  return {
      {"identity", [](double t) { return t; }, 0.0},
      {"square", [](double t) { return t * t; }, 0.0},
      {"cos", [](double t) { return std::cos(t); }, 1.0},
      {"sin", [](double t) { return std::sin(t); }, 1.0},
      {"quartic", [](double t) { return t * t * t * t; }, 24.0},
  };
}

LemmaCheck make_check(std::string name, double lhs, double bound) {
  LemmaCheck c;
  c.name = std::move(name);
  c.applicable = true;
  c.lhs = lhs;
  c.bound = bound;
  c.pass = lhs <= bound + kLemmaSlack;
  return c;
}

LemmaCheck skipped(std::string name, std::string why) {
  LemmaCheck c;
  c.name = std::move(name);
  c.unmet_precondition = std::move(why);
  return c;
}

}  // namespace

std::span<const TestFunction> test_function_catalog() {
  static const std::vector<TestFunction> catalog = make_catalog();
  return catalog;
}

const TestFunction& test_function(std::string_view name) {
  for (const auto& psi : test_function_catalog()) {
    if (psi.name == name) return psi;
  }
  throw InputError("unknown test function '" + std::string(name) +
                   "' (known: identity, square, cos, sin, quartic)");
}

InputDistribution rademacher() {
  return {"rademacher",
          [](std::uint64_t seed, std::uint64_t index) {
            return (rng::counter_word(seed, index, 0) >> 63) ? -1.0 : 1.0;
          },
          std::array<double, 4>{0.0, 1.0, 0.0, 1.0}};
}

InputDistribution standard_gaussian() {
  return {"gaussian",
          [](std::uint64_t seed, std::uint64_t index) {
            return rng::gaussian_pair(seed, index, 0).first;
          },
          std::array<double, 4>{0.0, 1.0, 0.0, 3.0}};
}

InputDistribution two_point(double a) {
  const double a2 = a * a;
  return {"two-point:" + std::to_string(a),
          [a](std::uint64_t seed, std::uint64_t index) {
            return (rng::counter_word(seed, index, 0) >> 63) ? -a : a;
          },
          std::array<double, 4>{0.0, a2, 0.0, a2 * a2}};
}

InputDistribution uniform_interval() {
  return {"uniform",
          [](std::uint64_t seed, std::uint64_t index) {
            const double u = rng::uniform_open(rng::counter_word(seed, index, 0));
            return (2.0 * u - 1.0) * std::sqrt(3.0);
          },
          std::array<double, 4>{0.0, 1.0, 0.0, 9.0 / 5.0}};
}

InputDistribution distribution_by_name(std::string_view name) {
  if (name == "rademacher") return rademacher();
  if (name == "gaussian") return standard_gaussian();
  if (name == "uniform") return uniform_interval();
  constexpr std::string_view prefix = "two-point:";
  if (name.starts_with(prefix)) {
    const std::string arg(name.substr(prefix.size()));
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || !std::isfinite(a) || a <= 0.0) {
      throw InputError("two-point distribution needs a positive number: '" +
                       std::string(name) + "'");
    }
    return two_point(a);
  }
  throw InputError("unknown distribution '" + std::string(name) +
                   "' (known: rademacher, gaussian, uniform, two-point:<a>)");
}

MomentReport hypothesis_check(const InputDistribution& dist,
                              std::uint64_t samples, std::uint64_t seed,
                              unsigned workers) {
  if (samples < 10000) {
    throw PreconditionError("moment check needs at least 10^4 samples");
  }
  const auto acc = reduce_samples<4>(samples, workers, [&](std::uint64_t i) {
    const double x = dist.sample(seed, i);
    const double x2 = x * x;
    return std::array<double, 4>{x, x2, x2 * x, x2 * x2};
  });
  MomentReport report;
  report.distribution = dist.name;
  report.samples = samples;
  report.seed = seed;
  for (std::size_t k = 0; k < 4; ++k) {
    report.empirical[k] = acc[k].mean;
    report.empirical_standard_error[k] = acc[k].standard_error();
  }
  if (dist.exact_moments) {
    report.exact = true;
    report.moments = *dist.exact_moments;
    report.standard_error = {0.0, 0.0, 0.0, 0.0};
  } else {
    report.moments = report.empirical;
    report.standard_error = report.empirical_standard_error;
  }
  const auto& m = report.moments;
  const auto& se = report.standard_error;
  const double tol = 1e-12;
  report.pass[0] = std::abs(m[0]) <= 5.0 * se[0] + tol;
  report.pass[1] = std::abs(m[1] - 1.0) <= 5.0 * se[1] + tol;
  report.pass[2] = std::abs(m[2]) <= 5.0 * se[2] + tol;
  report.pass[3] = m[3] <= 9.0 + 5.0 * se[3] + tol;
  return report;
}

double basic_bound(const MultilinearPolynomial& poly, double C) {
  check_C(C);
  double sum = 0.0;
  for (double inf : influences(poly)) sum += inf * inf;
  return C / 12.0 * pow9(degree(poly)) * sum;
}

double corollary_bound(const MultilinearPolynomial& poly, double C,
                       double epsilon) {
  check_C(C);
  const double var = variance(poly);
  if (var > 1.0 + kPreconditionSlack) {
    throw PreconditionError("variance " + std::to_string(var) +
                            " exceeds 1");
  }
  const auto inf = influences(poly);
  for (std::size_t t = 0; t < inf.size(); ++t) {
    if (inf[t] > epsilon + kPreconditionSlack) {
      throw PreconditionError("influence of coordinate " +
                              std::to_string(t + 1) + " (" +
                              std::to_string(inf[t]) +
                              ") exceeds epsilon = " + std::to_string(epsilon));
    }
  }
  const int k = degree(poly);
  return C / 12.0 * k * pow9(k) * epsilon;
}

AdditiveBoundDetail additive_bound_detail(const MultilinearPolynomial& f,
                                          const MultilinearPolynomial& g,
                                          double C) {
  check_C(C);
  AdditiveBoundDetail d;
  d.variance_f = variance(f);
  d.variance_g = variance(g);
  if (d.variance_f > 0.25 + kPreconditionSlack) {
    throw PreconditionError("Var[f] = " + std::to_string(d.variance_f) +
                            " exceeds 1/4");
  }
  if (d.variance_g > 0.25 + kPreconditionSlack) {
    throw PreconditionError("Var[g] = " + std::to_string(d.variance_g) +
                            " exceeds 1/4");
  }
  d.k1 = degree(f);
  d.k2 = degree(g);
  d.k = d.k1 * d.k2;
  d.noise_degree = degree(sub(f, g));
  d.epsilon = std::max(max_influence(f), max_influence(g));
  d.bound = C / 3.0 * d.k * pow9(d.k) * d.epsilon;
  return d;
}

double additive_bound(const MultilinearPolynomial& f,
                      const MultilinearPolynomial& g, double C) {
  return additive_bound_detail(f, g, C).bound;
}

MultiplicativeBoundDetail multiplicative_bound_detail(
    const MultilinearPolynomial& f, const MultilinearPolynomial& g, double C) {
  check_C(C);
  if (!is_boolean_valued(f)) {
    throw PreconditionError("f is not Boolean-valued");
  }
  if (!is_boolean_valued(g)) {
    throw PreconditionError("g is not Boolean-valued");
  }
  MultiplicativeBoundDetail d;
  d.k1 = degree(f);
  d.k2 = degree(g);
  d.k = d.k1 * d.k2;
  d.l1 = term_count(f);
  d.l2 = term_count(g);
  d.l = d.l1 * d.l2;
  d.epsilon = std::max(max_influence(f), max_influence(g));
  d.bound = C / 3.0 * d.k * d.l * pow9(d.k) * d.epsilon;
  d.product_degree = degree(mul(f, g));
  d.product_degree_bound =
      C / 3.0 * d.product_degree * d.l * pow9(d.product_degree) * d.epsilon;
  return d;
}

double multiplicative_bound(const MultilinearPolynomial& f,
                            const MultilinearPolynomial& g, double C) {
  return multiplicative_bound_detail(f, g, C).bound;
}

double expect_exact(const MultilinearPolynomial& poly,
                    const TestFunction& psi) {
  const TruthTable table = inverse_wht(poly);
  double sum = 0.0;
  for (double v : table.values()) sum += psi.eval(v);
  return std::ldexp(sum, -poly.num_vars());
}

MonteCarloEstimate expect_gaussian_mc(const MultilinearPolynomial& poly,
                                      const TestFunction& psi,
                                      std::uint64_t samples,
                                      std::uint64_t seed, unsigned workers) {
  if (samples < 1000) {
    throw PreconditionError("Monte Carlo needs at least 1000 samples");
  }
  const CompiledPolynomial compiled(poly);
  const int n = compiled.num_vars();
  const std::uint64_t pairs = static_cast<std::uint64_t>((n + 1) / 2);
  const auto acc = reduce_samples<1>(samples, workers, [&](std::uint64_t i) {
    std::array<double, kMaxPolyVars + 1> y;
    for (std::uint64_t p = 0; p < pairs; ++p) {
      const auto [a, b] = rng::gaussian_pair(seed, i, p);
      y[2 * p] = a;
      y[2 * p + 1] = b;
    }
    return std::array<double, 1>{psi.eval(compiled(y.data()))};
  });
  return {acc[0].mean, acc[0].standard_error(), samples};
}

InvarianceReport verify_invariance(const MultilinearPolynomial& poly,
                                   const TestFunction& psi, double bound,
                                   std::uint64_t samples, std::uint64_t seed,
                                   double z, unsigned workers) {
  InvarianceReport report;
  report.lhs = expect_exact(poly, psi);
  report.rhs = expect_gaussian_mc(poly, psi, samples, seed, workers);
  report.delta = std::abs(report.lhs - report.rhs.estimate);
  report.bound = bound;
  report.z = z;
  report.pass = report.delta <= bound + z * report.rhs.standard_error;
  return report;
}

bool LemmaReport::all_pass() const {
  for (const LemmaCheck* c : {&variance_of_difference,
                              &influence_of_difference,
                              &influence_of_product}) {
    if (c->applicable && !c->pass) return false;
  }
  return true;
}

LemmaReport lemma_suite(const MultilinearPolynomial& f,
                        const MultilinearPolynomial& g) {
  LemmaReport report;
  report.epsilon = std::max(max_influence(f), max_influence(g));
  report.l1 = term_count(f);
  report.l2 = term_count(g);
  const MultilinearPolynomial diff = sub(f, g);

  const double var_f = variance(f);
  const double var_g = variance(g);
  if (var_f > 0.25 + kPreconditionSlack) {
    report.variance_of_difference =
        skipped("variance_of_difference",
                "Var[f] = " + std::to_string(var_f) + " exceeds 1/4");
  } else if (var_g > 0.25 + kPreconditionSlack) {
    report.variance_of_difference =
        skipped("variance_of_difference",
                "Var[g] = " + std::to_string(var_g) + " exceeds 1/4");
  } else {
    report.variance_of_difference =
        make_check("variance_of_difference", variance(diff), 1.0);
  }

  report.influence_of_difference = make_check(
      "influence_of_difference", max_influence(diff), 4.0 * report.epsilon);

  if (!is_boolean_valued(f)) {
    report.influence_of_product =
        skipped("influence_of_product", "f is not Boolean-valued");
  } else if (!is_boolean_valued(g)) {
    report.influence_of_product =
        skipped("influence_of_product", "g is not Boolean-valued");
  } else {
    report.influence_of_product = make_check(
        "influence_of_product", max_influence(mul(f, g)),
        4.0 * report.epsilon * report.l1 * report.l2);
  }
  return report;
}

}  // namespace compwire
