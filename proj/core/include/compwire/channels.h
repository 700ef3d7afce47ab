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

// Eve's view of a computational wiretap channel. Alice publishes f(x) for
// uniform x in {-1,1}^n and Eve wants u = g(x). Everything here is exact
// enumeration over the 2^n points, each of weight 2^-n.

#ifndef COMPWIRE_CHANNELS_H_
#define COMPWIRE_CHANNELS_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "compwire/boolfn.h"

namespace compwire {

// Values closer than this are treated as one alphabet symbol.
inline constexpr double kMergeTolerance = 1e-9;

// Sorted distinct values of `values` (within kMergeTolerance) and, for each
// input position, the index of its symbol. A symbol is represented by the
// most frequent exact value in its cluster (ties: smallest).
struct Alphabet {
  std::vector<double> symbols;
  std::vector<int> labels;
};

Alphabet build_alphabet(std::span<const double> values);

// A pair (f, g) on a common n with both views of each function.
class WiretapSpec {
 public:
  static WiretapSpec from_polynomials(MultilinearPolynomial f,
                                      MultilinearPolynomial g);
  static WiretapSpec from_tables(const TruthTable& f, const TruthTable& g);

  int num_vars() const { return f_table_.num_vars(); }
  const TruthTable& f_table() const { return f_table_; }
  const TruthTable& g_table() const { return g_table_; }
  const MultilinearPolynomial& f_poly() const { return f_poly_; }
  const MultilinearPolynomial& g_poly() const { return g_poly_; }

 private:
  WiretapSpec(TruthTable f_table, TruthTable g_table,
              MultilinearPolynomial f_poly, MultilinearPolynomial g_poly);

  TruthTable f_table_;
  TruthTable g_table_;
  MultilinearPolynomial f_poly_;
  MultilinearPolynomial g_poly_;
};

// Joint law of (u, v) = (g(x), f(x)); probs[i][j] = Pr(u = u_values[i],
// v = v_values[j]).
struct JointDistribution {
  std::vector<double> u_values;
  std::vector<double> v_values;
  std::vector<std::vector<double>> probs;

  std::vector<double> u_marginal() const;
  std::vector<double> v_marginal() const;
};

// Row-stochastic matrix[i][j] = Pr(output_j | input_i). `prior` is the
// input law when known. Inputs of probability zero are removed from the
// matrix and listed in `dropped_inputs`.
struct DiscreteChannel {
  std::vector<double> inputs;
  std::vector<double> outputs;
  std::vector<std::vector<double>> matrix;
  std::vector<double> prior;
  std::vector<double> dropped_inputs;
};

struct MapEntry {
  double v = 0.0;
  double u_hat = 0.0;
  double posterior = 0.0;  // Pr(u = u_hat | v)
  double probability = 0.0;  // Pr(v)
};

struct MapEstimator {
  std::vector<MapEntry> entries;

  // Throws InputError if v is not in the range of f.
  double operator()(double v) const;
};

struct CommuteWitness {
  Point x;
  Point x_prime;
  double f_value = 0.0;
  double g_x = 0.0;
  double g_x_prime = 0.0;
};

struct CommuteResult {
  bool commutes = false;
  std::optional<CommuteWitness> witness;
};

enum class NoiseKind { kAdditive, kMultiplicative };

// Binary asymmetric channel seen through u N. Either parameter is absent
// when its conditioning event has probability zero.
struct BacParameters {
  // Pr(N = -1 | uN = -1): the input 1 was flipped to -1.
  std::optional<double> flip_given_minus;
  // Pr(N = -1 | uN = +1): the input -1 was flipped to 1.
  std::optional<double> flip_given_plus;
};

struct NoiseModel {
  NoiseKind kind = NoiseKind::kAdditive;
  MultilinearPolynomial noise{1};
  std::vector<double> support;
  std::vector<double> probs;
  // joint[i][j] = Pr(u = u_values[i], N = support[j]).
  std::vector<double> u_values;
  std::vector<std::vector<double>> joint;
  // max_x |f(x) - combine(u(x), N(x))|.
  double max_reconstruction_error = 0.0;
  bool reconstruction_holds = false;
  std::optional<BacParameters> bac;
};

JointDistribution joint_distribution(const WiretapSpec& spec);

// Pr(v | u) with the induced prior on u.
DiscreteChannel classic_channel(const WiretapSpec& spec);
DiscreteChannel classic_channel(const JointDistribution& joint);

// Pr(u | v) with the induced law of v as prior.
DiscreteChannel posterior_channel(const WiretapSpec& spec);
DiscreteChannel posterior_channel(const JointDistribution& joint);

// argmax_u Pr(u | v) for every v in the range of f. Ties go to the
// smallest u.
MapEstimator map_estimator(const WiretapSpec& spec);

// sum_v max_u Pr(u, v).
double eve_success_probability(const WiretapSpec& spec);

// True iff f(x) = f(x') implies g(x) = g(x'); otherwise a witness pair.
CommuteResult commutes(const WiretapSpec& spec);

// N = f - g. Reconstruction u + N = f is checked to kMergeTolerance.
NoiseModel additive_noise(const WiretapSpec& spec);

// N = f g for Boolean-valued f and g; reconstruction u N = f is exact.
// Throws PreconditionError otherwise.
NoiseModel multiplicative_noise(const WiretapSpec& spec);

}  // namespace compwire

#endif  // COMPWIRE_CHANNELS_H_
