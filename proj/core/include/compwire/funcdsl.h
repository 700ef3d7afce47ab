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

// Concrete syntax for functions: a multilinear polynomial expression
// language with exact rational constants, a truth-table file format (CSV or
// JSON), and a canonical polynomial printer.
//
// Expression grammar (whitespace insignificant):
//
//   expr     := term (('+' | '-') term)*
//   term     := ['-'] factor ('*' factor)*
//   factor   := rational | variable | '(' expr ')'
//   variable := 'x' [1-9][0-9]*
//   rational := integer ['/' positive-integer] | decimal
//
// Products are distributed and reduced with x_i * x_i = 1, so every
// expression normalizes to a multilinear polynomial.
//
// Table CSV:
//
//   # n=3
//   index,value            (or: x1,x2,x3,value with +1/-1 entries)
//   0,1
//   ...
//
// Table JSON: {"n": 3, "values": [ ... 8 numbers ... ]}.

#ifndef COMPWIRE_FUNCDSL_H_
#define COMPWIRE_FUNCDSL_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "compwire/boolfn.h"

namespace compwire {

using Rational = boost::multiprecision::cpp_rational;

struct PolySource {
  std::string text;
  // Explicit variable count; wins over the largest index in the text.
  std::optional<int> declared_n;
};

// Exact counterpart of MultilinearPolynomial produced by the parser.
class RationalPolynomial {
 public:
  using Coefficients = std::map<Mask, Rational>;

  RationalPolynomial(int n, Coefficients coeffs);

  int num_vars() const { return n_; }
  const Coefficients& coefficients() const { return coeffs_; }

  // Correctly rounded conversion of every coefficient.
  MultilinearPolynomial to_real() const;

  friend bool operator==(const RationalPolynomial&,
                         const RationalPolynomial&) = default;

 private:
  int n_;
  Coefficients coeffs_;
};

RationalPolynomial parse_poly_exact(const PolySource& src);
MultilinearPolynomial parse_poly(const PolySource& src);

// Detects JSON (leading '{') or CSV.
TruthTable parse_table(std::string_view text);
TruthTable parse_table_csv(std::string_view text);
TruthTable parse_table_json(std::string_view text);

// Canonical form: terms ordered by (monomial size, mask); coefficients
// printed as exact fractions when a fraction with denominator <= 10^6
// reproduces the double exactly, else as the shortest round-tripping
// decimal. The zero polynomial prints as "0".
std::string serialize_poly(const MultilinearPolynomial& poly);
std::string serialize_poly(const RationalPolynomial& poly);

// Number formatting used by serialize_poly (no sign handling beyond '-').
std::string format_number(double value);

// "x1*x3" for mask 0b101; "1" for the empty monomial.
std::string monomial_name(Mask mask);

// Correctly rounded (nearest, ties to even) rational -> double.
double to_double(const Rational& q);

}  // namespace compwire

#endif  // COMPWIRE_FUNCDSL_H_
