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

#include "compwire/channels.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "compwire/errors.h"

namespace compwire {
namespace {

double point_weight(int n) { return std::ldexp(1.0, -n); }

// Builds Pr(columns | rows) from a joint matrix indexed [row][col].
DiscreteChannel conditional(const std::vector<double>& row_values,
                            const std::vector<double>& col_values,
                            const std::vector<std::vector<double>>& joint) {
  DiscreteChannel ch;
  ch.outputs = col_values;
  for (std::size_t i = 0; i < row_values.size(); ++i) {
    const double mass = std::accumulate(joint[i].begin(), joint[i].end(), 0.0);
    if (mass <= 0.0) {
      ch.dropped_inputs.push_back(row_values[i]);
      continue;
    }
    std::vector<double> row(col_values.size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = joint[i][j] / mass;
    ch.inputs.push_back(row_values[i]);
    ch.prior.push_back(mass);
    ch.matrix.push_back(std::move(row));
  }
  return ch;
}

std::vector<std::vector<double>> transpose(
    const std::vector<std::vector<double>>& m, std::size_t cols) {
  std::vector<std::vector<double>> t(cols, std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  }
  return t;
}

std::vector<std::vector<double>> joint_of(const Alphabet& rows,
                                          const Alphabet& cols, int n) {
  std::vector<std::vector<double>> counts(
      rows.symbols.size(), std::vector<double>(cols.symbols.size(), 0.0));
  for (std::size_t x = 0; x < rows.labels.size(); ++x) {
    counts[static_cast<std::size_t>(rows.labels[x])]
          [static_cast<std::size_t>(cols.labels[x])] += 1.0;
  }
  const double w = point_weight(n);
  for (auto& row : counts) {
    for (auto& c : row) c *= w;
  }
  return counts;
}

}  // namespace

Alphabet build_alphabet(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return values[a] < values[b];
  });
  Alphabet out;
  out.labels.assign(values.size(), -1);
  std::size_t i = 0;
  while (i < order.size()) {
    const double start = values[order[i]];
    std::map<double, int> frequency;
    std::size_t j = i;
    while (j < order.size() && values[order[j]] - start <= kMergeTolerance) {
      ++frequency[values[order[j]]];
      out.labels[order[j]] = static_cast<int>(out.symbols.size());
      ++j;
    }
    double representative = start;
    int best = 0;
    for (const auto& [v, count] : frequency) {
      if (count > best) {
        best = count;
        representative = v;
      }
    }
    out.symbols.push_back(representative);
    i = j;
  }
  return out;
}

WiretapSpec::WiretapSpec(TruthTable f_table, TruthTable g_table,
                         MultilinearPolynomial f_poly,
                         MultilinearPolynomial g_poly)
    : f_table_(std::move(f_table)),
      g_table_(std::move(g_table)),
      f_poly_(std::move(f_poly)),
      g_poly_(std::move(g_poly)) {}

WiretapSpec WiretapSpec::from_polynomials(MultilinearPolynomial f,
                                          MultilinearPolynomial g) {
  if (f.num_vars() != g.num_vars()) {
    throw InputError("f has " + std::to_string(f.num_vars()) +
                     " variables but g has " + std::to_string(g.num_vars()));
  }
  check_enumerable(f.num_vars());
  TruthTable ft = inverse_wht(f);
  TruthTable gt = inverse_wht(g);
  return WiretapSpec(std::move(ft), std::move(gt), std::move(f), std::move(g));
}

WiretapSpec WiretapSpec::from_tables(const TruthTable& f, const TruthTable& g) {
  if (f.num_vars() != g.num_vars()) {
    throw InputError("f has " + std::to_string(f.num_vars()) +
                     " variables but g has " + std::to_string(g.num_vars()));
  }
  return WiretapSpec(f, g, wht(f), wht(g));
}

std::vector<double> JointDistribution::u_marginal() const {
  std::vector<double> out(u_values.size(), 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    out[i] = std::accumulate(probs[i].begin(), probs[i].end(), 0.0);
  }
  return out;
}

std::vector<double> JointDistribution::v_marginal() const {
  std::vector<double> out(v_values.size(), 0.0);
  for (const auto& row : probs) {
    for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j];
  }
  return out;
}

double MapEstimator::operator()(double v) const {
  for (const auto& e : entries) {
    if (std::abs(e.v - v) <= kMergeTolerance) return e.u_hat;
  }
  throw InputError("value " + std::to_string(v) + " is not in the range of f");
}

JointDistribution joint_distribution(const WiretapSpec& spec) {
  const Alphabet u = build_alphabet(spec.g_table().values());
  const Alphabet v = build_alphabet(spec.f_table().values());
  JointDistribution joint;
  joint.probs = joint_of(u, v, spec.num_vars());
  joint.u_values = u.symbols;
  joint.v_values = v.symbols;
  return joint;
}

DiscreteChannel classic_channel(const JointDistribution& joint) {
  DiscreteChannel ch = conditional(joint.u_values, joint.v_values, joint.probs);
  return ch;
}

DiscreteChannel classic_channel(const WiretapSpec& spec) {
  return classic_channel(joint_distribution(spec));
}

DiscreteChannel posterior_channel(const JointDistribution& joint) {
  return conditional(joint.v_values, joint.u_values,
                     transpose(joint.probs, joint.v_values.size()));
}

DiscreteChannel posterior_channel(const WiretapSpec& spec) {
  return posterior_channel(joint_distribution(spec));
}

MapEstimator map_estimator(const WiretapSpec& spec) {
  const JointDistribution joint = joint_distribution(spec);
  const std::vector<double> pv = joint.v_marginal();
  MapEstimator est;
  for (std::size_t j = 0; j < joint.v_values.size(); ++j) {
    if (pv[j] <= 0.0) continue;
    std::size_t best = 0;
    for (std::size_t i = 1; i < joint.u_values.size(); ++i) {
      if (joint.probs[i][j] > joint.probs[best][j]) best = i;
    }
    est.entries.push_back({joint.v_values[j], joint.u_values[best],
                           joint.probs[best][j] / pv[j], pv[j]});
  }
  return est;
}

double eve_success_probability(const WiretapSpec& spec) {
  const JointDistribution joint = joint_distribution(spec);
  double total = 0.0;
  for (std::size_t j = 0; j < joint.v_values.size(); ++j) {
    double best = 0.0;
    for (const auto& row : joint.probs) best = std::max(best, row[j]);
    total += best;
  }
  return total;
}

CommuteResult commutes(const WiretapSpec& spec) {
  const Alphabet v = build_alphabet(spec.f_table().values());
  const Alphabet u = build_alphabet(spec.g_table().values());
  // First point seen in each fiber of f.
  std::vector<std::optional<std::size_t>> representative(v.symbols.size());
  for (std::size_t x = 0; x < v.labels.size(); ++x) {
    auto& rep = representative[static_cast<std::size_t>(v.labels[x])];
    if (!rep) {
      rep = x;
      continue;
    }
    if (u.labels[*rep] != u.labels[x]) {
      const int n = spec.num_vars();
      CommuteWitness w{point_of_index(n, *rep), point_of_index(n, x),
                       spec.f_table()[x], spec.g_table()[*rep],
                       spec.g_table()[x]};
      return {false, std::move(w)};
    }
  }
  return {true, std::nullopt};
}

NoiseModel additive_noise(const WiretapSpec& spec) {
  NoiseModel model;
  model.kind = NoiseKind::kAdditive;
  model.noise = sub(spec.f_poly(), spec.g_poly());
  const TruthTable noise = inverse_wht(model.noise);
  const Alphabet n_alpha = build_alphabet(noise.values());
  const Alphabet u_alpha = build_alphabet(spec.g_table().values());
  model.support = n_alpha.symbols;
  model.u_values = u_alpha.symbols;
  model.joint = joint_of(u_alpha, n_alpha, spec.num_vars());
  model.probs.assign(model.support.size(), 0.0);
  for (const auto& row : model.joint) {
    for (std::size_t j = 0; j < row.size(); ++j) model.probs[j] += row[j];
  }
  double err = 0.0;
  for (std::size_t x = 0; x < noise.size(); ++x) {
    err = std::max(err,
                   std::abs(spec.f_table()[x] - (spec.g_table()[x] + noise[x])));
  }
  model.max_reconstruction_error = err;
  model.reconstruction_holds = err <= kMergeTolerance;
  return model;
}

NoiseModel multiplicative_noise(const WiretapSpec& spec) {
  if (!is_boolean_valued(spec.f_table())) {
    throw PreconditionError(
        "multiplicative noise requires Boolean-valued f (values +1/-1)");
  }
  if (!is_boolean_valued(spec.g_table())) {
    throw PreconditionError(
        "multiplicative noise requires Boolean-valued g (values +1/-1)");
  }
  NoiseModel model;
  model.kind = NoiseKind::kMultiplicative;
  model.noise = mul(spec.f_poly(), spec.g_poly());
  const TruthTable noise = inverse_wht(model.noise);
  if (!is_boolean_valued(noise)) {
    throw InputError("product of Boolean functions is not Boolean-valued");
  }
  const std::size_t size = noise.size();
  const double w = point_weight(spec.num_vars());
  auto sign = [](double v) { return v > 0 ? 1 : -1; };

  // Symbols: index 0 is -1, index 1 is +1; unused symbols are removed below.
  std::vector<std::vector<double>> joint(2, std::vector<double>(2, 0.0));
  double minus_out = 0.0, minus_out_flipped = 0.0;
  double plus_out = 0.0, plus_out_flipped = 0.0;
  double err = 0.0;
  bool exact = true;
  for (std::size_t x = 0; x < size; ++x) {
    const int u = sign(spec.g_table()[x]);
    const int nz = sign(noise[x]);
    const int f = sign(spec.f_table()[x]);
    exact = exact && (u * nz == f);
    err = std::max(err, std::abs(spec.f_table()[x] -
                                 spec.g_table()[x] * noise[x]));
    joint[u > 0 ? 1 : 0][nz > 0 ? 1 : 0] += w;
    if (f < 0) {
      minus_out += 1.0;
      if (nz < 0) minus_out_flipped += 1.0;
    } else {
      plus_out += 1.0;
      if (nz < 0) plus_out_flipped += 1.0;
    }
  }
  std::vector<bool> used_u(2, false), used_n(2, false);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (joint[i][j] > 0) used_u[i] = used_n[j] = true;
    }
  }
  const double symbol[2] = {-1.0, 1.0};
  for (std::size_t i = 0; i < 2; ++i) {
    if (!used_u[i]) continue;
    model.u_values.push_back(symbol[i]);
    std::vector<double> row;
    for (std::size_t j = 0; j < 2; ++j) {
      if (used_n[j]) row.push_back(joint[i][j]);
    }
    model.joint.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < 2; ++j) {
    if (!used_n[j]) continue;
    model.support.push_back(symbol[j]);
    model.probs.push_back(joint[0][j] + joint[1][j]);
  }
  model.max_reconstruction_error = err;
  model.reconstruction_holds = exact && err <= kMergeTolerance;
  BacParameters bac;
  if (minus_out > 0) bac.flip_given_minus = minus_out_flipped / minus_out;
  if (plus_out > 0) bac.flip_given_plus = plus_out_flipped / plus_out;
  model.bac = bac;
  return model;
}

}  // namespace compwire
