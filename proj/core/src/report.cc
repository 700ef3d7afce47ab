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

#include "compwire/report.h"

#include <algorithm>
#include <bit>
#include <optional>
#include <utility>
#include <vector>

#include "compwire/funcdsl.h"

namespace compwire {
namespace {

Json optional_probability(const std::optional<double>& p) {
  return p ? Json(*p) : Json("undefined");
}

Json matrix(const std::vector<std::vector<double>>& m) {
  Json rows = Json::array();
  for (const auto& row : m) rows.push_back(row);
  return rows;
}

const char* kind_name(NoiseKind kind) {
  return kind == NoiseKind::kAdditive ? "additive" : "multiplicative";
}

}  // namespace

Json to_json(const Point& point) {
  Json out = Json::array();
  for (int x : point) out.push_back(x);
  return out;
}

Json to_json(const MultilinearPolynomial& poly) {
  std::vector<std::pair<Mask, double>> ordered(poly.coefficients().begin(),
                                               poly.coefficients().end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a,
                                                      const auto& b) {
    const int pa = std::popcount(a.first);
    const int pb = std::popcount(b.first);
    return pa != pb ? pa < pb : a.first < b.first;
  });
  Json terms = Json::array();
  for (const auto& [mask, c] : ordered) {
    Json vars = Json::array();
    for (Mask m = mask; m != 0; m &= m - 1) {
      vars.push_back(std::countr_zero(m) + 1);
    }
    terms.push_back(Json{{"monomial", monomial_name(mask)},
                         {"variables", std::move(vars)},
                         {"coefficient", c},
                         {"text", format_number(c)}});
  }
  return Json{{"n", poly.num_vars()},
              {"expression", serialize_poly(poly)},
              {"terms", std::move(terms)}};
}

Json to_json(const InfluenceProfile& profile) {
  return Json{{"influences", profile.influences},
              {"max_influence", profile.max_influence},
              {"variance", profile.variance},
              {"mean", profile.mean}};
}

Json to_json(const JointDistribution& joint) {
  return Json{{"u_values", joint.u_values},
              {"v_values", joint.v_values},
              {"probs", matrix(joint.probs)},
              {"u_marginal", joint.u_marginal()},
              {"v_marginal", joint.v_marginal()}};
}

Json to_json(const DiscreteChannel& channel) {
  return Json{{"inputs", channel.inputs},
              {"outputs", channel.outputs},
              {"matrix", matrix(channel.matrix)},
              {"prior", channel.prior},
              {"dropped_inputs", channel.dropped_inputs}};
}

Json to_json(const MapEstimator& estimator) {
  Json rows = Json::array();
  for (const auto& e : estimator.entries) {
    rows.push_back(Json{{"v", e.v},
                        {"u_hat", e.u_hat},
                        {"posterior", e.posterior},
                        {"probability", e.probability}});
  }
  return rows;
}

Json to_json(const CommuteResult& result) {
  Json out{{"commutes", result.commutes}};
  if (result.witness) {
    const auto& w = *result.witness;
    out["witness"] = Json{{"x", to_json(w.x)},
                          {"x_prime", to_json(w.x_prime)},
                          {"f_value", w.f_value},
                          {"g_x", w.g_x},
                          {"g_x_prime", w.g_x_prime}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const NoiseModel& model) {
  Json out{{"kind", kind_name(model.kind)},
           {"noise", to_json(model.noise)},
           {"support", model.support},
           {"probs", model.probs},
           {"u_values", model.u_values},
           {"joint_u_noise", matrix(model.joint)},
           {"reconstruction_holds", model.reconstruction_holds},
           {"max_reconstruction_error", model.max_reconstruction_error}};
  if (model.bac) {
    out["bac"] = Json{
        {"flip_given_output_minus",
         optional_probability(model.bac->flip_given_minus)},
        {"flip_given_output_plus",
         optional_probability(model.bac->flip_given_plus)}};
  }
  return out;
}

Json to_json(const MomentReport& report) {
  auto flags = Json::array();
  for (bool p : report.pass) flags.push_back(p);
  return Json{{"distribution", report.distribution},
              {"samples", report.samples},
              {"seed", report.seed},
              {"exact", report.exact},
              {"moments", report.moments},
              {"standard_error", report.standard_error},
              {"empirical", report.empirical},
              {"empirical_standard_error", report.empirical_standard_error},
              {"pass", std::move(flags)},
              {"all_pass", report.all_pass()}};
}

Json to_json(const MonteCarloEstimate& estimate) {
  return Json{{"estimate", estimate.estimate},
              {"standard_error", estimate.standard_error},
              {"samples", estimate.samples}};
}

Json to_json(const InvarianceReport& report) {
  return Json{{"lhs", report.lhs},
              {"rhs", to_json(report.rhs)},
              {"delta", report.delta},
              {"bound", report.bound},
              {"z", report.z},
              {"pass", report.pass}};
}

Json to_json(const AdditiveBoundDetail& d) {
  return Json{{"k1", d.k1},
              {"k2", d.k2},
              {"k", d.k},
              {"noise_degree", d.noise_degree},
              {"epsilon", d.epsilon},
              {"variance_f", d.variance_f},
              {"variance_g", d.variance_g},
              {"bound", d.bound}};
}

Json to_json(const MultiplicativeBoundDetail& d) {
  return Json{{"k1", d.k1},
              {"k2", d.k2},
              {"k", d.k},
              {"l1", d.l1},
              {"l2", d.l2},
              {"l", d.l},
              {"epsilon", d.epsilon},
              {"bound", d.bound},
              {"product_degree", d.product_degree},
              {"product_degree_bound", d.product_degree_bound}};
}

Json to_json(const LemmaCheck& c) {
  Json out{{"name", c.name}, {"applicable", c.applicable}};
  if (c.applicable) {
    out["lhs"] = c.lhs;
    out["bound"] = c.bound;
    out["pass"] = c.pass;
  } else {
    out["unmet_precondition"] = c.unmet_precondition;
  }
  return out;
}

Json to_json(const LemmaReport& report) {
  return Json{{"epsilon", report.epsilon},
              {"l1", report.l1},
              {"l2", report.l2},
              {"lemmas",
               Json::array({to_json(report.variance_of_difference),
                            to_json(report.influence_of_difference),
                            to_json(report.influence_of_product)})},
              {"all_pass", report.all_pass()}};
}

Json analysis_report(const MultilinearPolynomial& poly) {
  const InfluenceProfile profile = influence_profile(poly);
  Json out{{"polynomial", to_json(poly)},
           {"mean", profile.mean},
           {"variance", profile.variance},
           {"degree", degree(poly)},
           {"term_count", term_count(poly)},
           {"influences", profile.influences},
           {"max_influence", profile.max_influence}};
  if (poly.num_vars() <= kMaxTableVars) {
    out["boolean_valued"] = is_boolean_valued(poly);
  } else {
    out["boolean_valued"] = nullptr;
  }
  return out;
}

}  // namespace compwire
