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

#include "cli.h"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "compwire/boolfn.h"
#include "compwire/channels.h"
#include "compwire/errors.h"
#include "compwire/funcdsl.h"
#include "compwire/invariance.h"

namespace compwire::cli {
namespace {

struct Options {
  std::string f;
  std::string g;
  std::optional<int> n;
  std::string psi = "cos";
  std::optional<double> C;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  double z = 4.0;
  std::string noise;
  std::optional<double> claim;
  unsigned workers = 0;
  std::string dist = "rademacher";
  std::string format = "json";
  std::string out;
};

// Verdict failures still emit their report before exiting with code 3.
struct Outcome {
  Json report;
  bool verdict = true;
};

struct LoadedFunction {
  std::optional<RationalPolynomial> exact;
  std::optional<TruthTable> table;
  int num_vars = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_table(std::string_view path, std::string_view text) {
  if (path.ends_with(".csv") || path.ends_with(".json")) return true;
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string_view::npos &&
         (text[first] == '{' || text[first] == '#');
}

LoadedFunction load_function(const std::string& source, const char* which,
                             std::optional<int> declared_n) {
  if (source.empty()) {
    throw InputError(std::string("missing --") + which);
  }
  std::string text = source;
  std::string path;
  if (source.front() == '@') {
    path = source.substr(1);
    text = read_file(path);
  }
  LoadedFunction fn;
  if (!path.empty() && looks_like_table(path, text)) {
    fn.table = parse_table(text);
    fn.num_vars = fn.table->num_vars();
    if (declared_n && *declared_n != fn.num_vars) {
      throw InputError(std::string(which) + " table has n = " +
                       std::to_string(fn.num_vars) + " but --n is " +
                       std::to_string(*declared_n));
    }
    return fn;
  }
  try {
    fn.exact = parse_poly_exact({text, declared_n});
  } catch (const ParseError& e) {
    throw ParseError(std::string(which) + ": " + e.what(), e.position());
  }
  fn.num_vars = fn.exact->num_vars();
  return fn;
}

// Loads f and optionally g on a common n. Without --n, expressions take the
// largest variable index across both.
std::pair<LoadedFunction, std::optional<LoadedFunction>> load_pair(
    const Options& opt, bool need_g) {
  LoadedFunction f = load_function(opt.f, "f", opt.n);
  std::optional<LoadedFunction> g;
  if (!opt.g.empty()) {
    g = load_function(opt.g, "g", opt.n);
  } else if (need_g) {
    throw InputError("missing --g");
  }
  if (g && !opt.n) {
    const int n = std::max(f.num_vars, g->num_vars);
    if (f.exact && f.num_vars != n) f = load_function(opt.f, "f", n);
    if (g->exact && g->num_vars != n) g = load_function(opt.g, "g", n);
  }
  if (g && f.num_vars != g->num_vars) {
    throw InputError("f has n = " + std::to_string(f.num_vars) +
                     " but g has n = " + std::to_string(g->num_vars));
  }
  return {std::move(f), std::move(g)};
}

MultilinearPolynomial poly_of(const LoadedFunction& fn) {
  return fn.exact ? fn.exact->to_real() : wht(*fn.table);
}

WiretapSpec spec_of(const LoadedFunction& f, const LoadedFunction& g) {
  if (f.exact && g.exact) {
    return WiretapSpec::from_polynomials(f.exact->to_real(),
                                         g.exact->to_real());
  }
  const TruthTable ft = f.table ? *f.table : inverse_wht(f.exact->to_real());
  const TruthTable gt = g.table ? *g.table : inverse_wht(g.exact->to_real());
  return WiretapSpec::from_tables(ft, gt);
}

std::string source_text(const LoadedFunction& fn) {
  return fn.exact ? serialize_poly(*fn.exact) : serialize_poly(wht(*fn.table));
}

TestFunction chosen_psi(const Options& opt) {
  TestFunction psi = test_function(opt.psi);
  if (opt.C) psi.C = *opt.C;
  if (!std::isfinite(psi.C) || psi.C < 0) {
    throw InputError("--C must be finite and non-negative");
  }
  return psi;
}

Outcome cmd_analyze(const Options& opt) {
  const auto [f, g] = load_pair(opt, false);
  Json report{{"command", "analyze"}, {"f", analysis_report(poly_of(f))}};
  if (g) report["g"] = analysis_report(poly_of(*g));
  return {std::move(report), true};
}

Outcome cmd_channel(const Options& opt) {
  const auto [f, g] = load_pair(opt, true);
  const WiretapSpec spec = spec_of(f, *g);
  const JointDistribution joint = joint_distribution(spec);
  const DiscreteChannel posterior = posterior_channel(joint);
  Json report{{"command", "channel"},
              {"n", spec.num_vars()},
              {"f", source_text(f)},
              {"g", source_text(*g)},
              {"joint", to_json(joint)},
              {"classic_channel", to_json(classic_channel(joint))},
              {"posterior_channel", to_json(posterior)},
              {"map_estimator", to_json(map_estimator(spec))},
              {"eve_success_probability", eve_success_probability(spec)},
              {"additive_noise", to_json(additive_noise(spec))}};
  if (is_boolean_valued(spec.f_table()) && is_boolean_valued(spec.g_table())) {
    const NoiseModel mult = multiplicative_noise(spec);
    Json m = to_json(mult);
    // With u N = f = v, the flip probabilities are posterior entries:
    // Pr(N=-1 | uN=-1) = Pr(u=1 | v=-1), Pr(N=-1 | uN=1) = Pr(u=-1 | v=1).
    auto posterior_entry = [&](double v, double u) -> std::optional<double> {
      for (std::size_t i = 0; i < posterior.inputs.size(); ++i) {
        if (posterior.inputs[i] != v) continue;
        for (std::size_t j = 0; j < posterior.outputs.size(); ++j) {
          if (posterior.outputs[j] == u) return posterior.matrix[i][j];
        }
        return 0.0;
      }
      return std::nullopt;
    };
    const auto p_minus = posterior_entry(-1.0, 1.0);
    const auto p_plus = posterior_entry(1.0, -1.0);
    m["bac_matches_posterior"] =
        p_minus == mult.bac->flip_given_minus &&
        p_plus == mult.bac->flip_given_plus;
    report["multiplicative_noise"] = std::move(m);
  } else {
    report["multiplicative_noise"] = nullptr;
  }
  return {std::move(report), true};
}

Outcome cmd_commute(const Options& opt) {
  const auto [f, g] = load_pair(opt, true);
  const WiretapSpec spec = spec_of(f, *g);
  Json report{{"command", "commute"}, {"n", spec.num_vars()}};
  const Json result = to_json(commutes(spec));
  report["commutes"] = result["commutes"];
  report["witness"] = result["witness"];
  report["eve_success_probability"] = eve_success_probability(spec);
  return {std::move(report), true};
}

Outcome cmd_invariance(const Options& opt) {
  const auto [f, g] = load_pair(opt, false);
  const TestFunction psi = chosen_psi(opt);
  const MultilinearPolynomial fp = poly_of(f);
  Json report{{"command", "invariance"},
              {"psi", psi.name},
              {"C", psi.C},
              {"samples", opt.samples},
              {"seed", opt.seed}};
  MultilinearPolynomial target = fp;
  double bound = 0.0;
  std::optional<double> product_degree_bound;

  if (!g) {
    report["mode"] = "single";
    report["f"] = source_text(f);
    const double var = variance(fp);
    if (var <= 1.0 + 1e-12) {
      const double eps = max_influence(fp);
      bound = corollary_bound(fp, psi.C, eps);
      report["bound_kind"] = "corollary";
      report["bound_detail"] = Json{{"k", degree(fp)},
                                    {"epsilon", eps},
                                    {"variance", var},
                                    {"bound", bound}};
    } else {
      bound = basic_bound(fp, psi.C);
      report["bound_kind"] = "basic";
      report["bound_detail"] = Json{{"k", degree(fp)},
                                    {"variance", var},
                                    {"bound", bound}};
    }
  } else {
    const MultilinearPolynomial gp = poly_of(*g);
    report["f"] = source_text(f);
    report["g"] = source_text(*g);
    std::string mode = opt.noise;
    if (mode.empty()) {
      mode = is_boolean_valued(fp) && is_boolean_valued(gp) ? "multiplicative"
                                                            : "additive";
    }
    report["mode"] = mode;
    if (mode == "additive") {
      const AdditiveBoundDetail d = additive_bound_detail(fp, gp, psi.C);
      target = sub(fp, gp);
      bound = d.bound;
      report["bound_kind"] = "additive";
      report["bound_detail"] = to_json(d);
    } else if (mode == "multiplicative") {
      const MultiplicativeBoundDetail d =
          multiplicative_bound_detail(fp, gp, psi.C);
      target = mul(fp, gp);
      bound = d.bound;
      product_degree_bound = d.product_degree_bound;
      report["bound_kind"] = "multiplicative";
      report["bound_detail"] = to_json(d);
      report["bound_variants"] =
          Json{{"literal", d.bound},
               {"product_degree", d.product_degree_bound},
               {"k_differs_from_product_degree", d.k != d.product_degree}};
    } else {
      throw InputError("--noise must be 'additive' or 'multiplicative'");
    }
    report["noise"] = serialize_poly(target);
  }

  if (opt.claim) {
    const double claimed = *opt.claim * psi.C;
    const bool literal_ok = bound <= claimed;
    Json claim{{"coefficient", *opt.claim},
               {"value", claimed},
               {"consistent_with_literal", literal_ok}};
    if (product_degree_bound) {
      claim["consistent_with_product_degree"] =
          *product_degree_bound <= claimed;
    }
    claim["label"] = literal_ok ? "consistent with the literal bound"
                                : "inconsistent with the literal bound";
    report["claim"] = std::move(claim);
  }

  const InvarianceReport verification = verify_invariance(
      target, psi, bound, opt.samples, opt.seed, opt.z, opt.workers);
  report["verification"] = to_json(verification);
  return {std::move(report), verification.pass};
}

Outcome cmd_lemmas(const Options& opt) {
  const auto [f, g] = load_pair(opt, true);
  const LemmaReport lemmas = lemma_suite(poly_of(f), poly_of(*g));
  Json report{{"command", "lemmas"},
              {"f", source_text(f)},
              {"g", source_text(*g)},
              {"report", to_json(lemmas)}};
  return {std::move(report), lemmas.all_pass()};
}

Outcome cmd_moments(const Options& opt) {
  const MomentReport moments = hypothesis_check(
      distribution_by_name(opt.dist), opt.samples, opt.seed, opt.workers);
  Json report{{"command", "moments"}, {"report", to_json(moments)}};
  return {std::move(report), moments.all_pass()};
}

void pretty_into(const Json& node, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar_text = [](const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  auto is_flat = [](const Json& arr) {
    for (const auto& e : arr) {
      if (e.is_structured()) return false;
    }
    return true;
  };
  std::size_t index = 0;
  for (auto it = node.begin(); it != node.end(); ++it, ++index) {
    const std::string key =
        node.is_object() ? it.key() : "[" + std::to_string(index) + "]";
    const Json& v = it.value();
    if (v.is_object()) {
      out += pad + key + ":\n";
      pretty_into(v, indent + 2, out);
    } else if (v.is_array() && is_flat(v)) {
      out += pad + key + ": [";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + scalar_text(v[i]);
      }
      out += "]\n";
    } else if (v.is_array()) {
      out += pad + key + ":\n";
      pretty_into(v, indent + 2, out);
    } else {
      out += pad + key + ": " + scalar_text(v) + "\n";
    }
  }
}

std::string csv_field(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return s;
}

void csv_into(const Json& node, const std::string& path, std::string& out) {
  auto is_scalar_array = [](const Json& arr) {
    for (const auto& e : arr) {
      if (e.is_structured()) return false;
    }
    return true;
  };
  auto is_matrix = [&](const Json& arr) {
    if (arr.empty()) return false;
    for (const auto& e : arr) {
      if (!e.is_array() || !is_scalar_array(e)) return false;
    }
    return true;
  };
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      csv_into(it.value(), path.empty() ? it.key() : path + "." + it.key(),
               out);
    }
  } else if (node.is_array() && is_scalar_array(node)) {
    out += path;
    for (const auto& e : node) out += "," + csv_field(e);
    out += "\n";
  } else if (node.is_array() && is_matrix(node)) {
    out += path + ",row";
    for (std::size_t j = 0; j < node[0].size(); ++j) {
      out += ",c" + std::to_string(j);
    }
    out += "\n";
    for (std::size_t i = 0; i < node.size(); ++i) {
      out += path + "," + std::to_string(i);
      for (const auto& e : node[i]) out += "," + csv_field(e);
      out += "\n";
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      csv_into(node[i], path + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out += path + "," + csv_field(node) + "\n";
  }
}

}  // namespace

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

std::string render_pretty(const Json& report) {
  std::string out;
  pretty_into(report, 0, out);
  return out;
}

std::string render_csv(const Json& report) {
  std::string out = "key,value\n";
  csv_into(report, "", out);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Computational wiretap channel analysis", "compwire"};
  app.require_subcommand(1);
  Options opt;

  auto add_functions = [&](CLI::App* sub, bool with_g) {
    sub->add_option("--f", opt.f, "Function f: expression or @file")
        ->required();
    if (with_g) {
      sub->add_option("--g", opt.g, "Function g: expression or @file");
    }
    sub->add_option("--n", opt.n, "Number of variables")
        ->check(CLI::Range(1, kMaxPolyVars));
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--out", opt.out, "Write the report to this path");
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", opt.samples, "Monte Carlo sample count")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "64-bit seed");
    sub->add_option("--workers", opt.workers,
                    "Worker threads (0 = hardware concurrency)");
  };

  auto* analyze = app.add_subcommand("analyze", "Fourier summary of f (and g)");
  add_functions(analyze, true);
  add_output(analyze);

  auto* channel = app.add_subcommand(
      "channel", "Joint law, channels, MAP estimator and noise models");
  add_functions(channel, true);
  add_output(channel);

  auto* commute = app.add_subcommand(
      "commute", "Whether g is recoverable from f exactly");
  add_functions(commute, true);
  add_output(commute);

  auto* invariance = app.add_subcommand(
      "invariance", "Compare E[psi(F(x))] with its Gaussian counterpart");
  add_functions(invariance, true);
  add_output(invariance);
  add_sampling(invariance);
  invariance->add_option("--psi", opt.psi, "Test function")
      ->check(CLI::IsMember({"identity", "square", "cos", "sin", "quartic"}));
  invariance->add_option("--C", opt.C, "Override sup |psi''''|");
  invariance->add_option("--z", opt.z, "Standard-error multiplier");
  invariance->add_option("--noise", opt.noise, "additive or multiplicative")
      ->check(CLI::IsMember({"additive", "multiplicative"}));
  invariance->add_option("--claim", opt.claim,
                         "Claimed bound coefficient, compared as claim * C");

  auto* lemmas = app.add_subcommand("lemmas", "Check the f - g / f g lemmas");
  add_functions(lemmas, true);
  add_output(lemmas);

  auto* moments =
      app.add_subcommand("moments", "Check moment conditions of an input law");
  moments->add_option("--dist", opt.dist,
                      "rademacher, gaussian, uniform or two-point:<a>");
  add_sampling(moments);
  add_output(moments);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Outcome outcome;
  try {
    if (*analyze) {
      outcome = cmd_analyze(opt);
    } else if (*channel) {
      outcome = cmd_channel(opt);
    } else if (*commute) {
      outcome = cmd_commute(opt);
    } else if (*invariance) {
      outcome = cmd_invariance(opt);
    } else if (*lemmas) {
      outcome = cmd_lemmas(opt);
    } else {
      outcome = cmd_moments(opt);
    }
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPreconditionError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  std::string text;
  if (opt.format == "csv") {
    text = render_csv(outcome.report);
  } else if (opt.format == "pretty") {
    text = render_pretty(outcome.report);
  } else {
    text = render_json(outcome.report);
  }
  if (opt.out.empty()) {
    out << text;
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << opt.out << "'\n";
      return kInputError;
    }
    file << text;
  }
  return outcome.verdict ? kOk : kVerdictFailure;
}

}  // namespace compwire::cli
