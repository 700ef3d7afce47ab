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

#include "compwire/funcdsl.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "compwire/errors.h"

namespace compwire {
namespace {

namespace mp = boost::multiprecision;
using Terms = RationalPolynomial::Coefficients;

void drop_zeros(Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
}

Terms add(Terms a, const Terms& b, bool subtract) {
  for (const auto& [mask, c] : b) {
    if (subtract) {
      a[mask] -= c;
    } else {
      a[mask] += c;
    }
  }
  drop_zeros(a);
  return a;
}

Terms multiply(const Terms& a, const Terms& b) {
  Terms out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) out[ma ^ mb] += ca * cb;
  }
  drop_zeros(out);
  return out;
}

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::optional<int> declared_n)
      : text_(text), declared_n_(declared_n) {}

  RationalPolynomial parse() {
    if (declared_n_ && (*declared_n_ < 1 || *declared_n_ > kMaxPolyVars)) {
      throw InputError("declared n must be in [1, " +
                       std::to_string(kMaxPolyVars) + "]");
    }
    skip_space();
    if (at_end()) throw ParseError("empty expression", 0);
    Terms terms = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected character '") + peek() + "'");
    const int n = declared_n_.value_or(std::max(1, max_index_));
    return RationalPolynomial(n, std::move(terms));
  }

 private:
  Terms expr() {
    Terms acc = term();
    for (;;) {
      skip_space();
      if (at_end() || (peek() != '+' && peek() != '-')) return acc;
      const bool subtract = peek() == '-';
      ++pos_;
      acc = add(std::move(acc), term(), subtract);
    }
  }

  Terms term() {
    skip_space();
    bool negate = false;
    if (!at_end() && peek() == '-') {
      negate = true;
      ++pos_;
    }
    Terms acc = factor();
    for (;;) {
      skip_space();
      if (at_end() || peek() != '*') break;
      ++pos_;
      acc = multiply(acc, factor());
    }
    if (negate) {
      for (auto& [mask, c] : acc) c = -c;
    }
    return acc;
  }

  Terms factor() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Terms inner = expr();
      skip_space();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x') return variable();
    if (is_digit(c) || c == '.') return rational();
    fail(std::string("expected number, variable or '(' but found '") + c +
         "'");
  }

  Terms variable() {
    const std::size_t start = pos_;
    ++pos_;  // 'x'
    if (at_end() || !is_digit(peek())) {
      fail("expected variable index after 'x'", start);
    }
    if (peek() == '0') fail("variable index 0 is not allowed", start);
    int index = 0;
    while (!at_end() && is_digit(peek())) {
      index = index * 10 + (peek() - '0');
      if (index > kMaxPolyVars) {
        fail("variable index exceeds " + std::to_string(kMaxPolyVars), start);
      }
      ++pos_;
    }
    if (declared_n_ && index > *declared_n_) {
      fail("variable x" + std::to_string(index) + " exceeds declared n = " +
               std::to_string(*declared_n_),
           start);
    }
    max_index_ = std::max(max_index_, index);
    return Terms{{Mask{1} << (index - 1), Rational(1)}};
  }

  Terms rational() {
    const std::size_t start = pos_;
    mp::cpp_int whole = digits();
    if (!at_end() && peek() == '.') {
      ++pos_;
      if (at_end() || !is_digit(peek())) {
        fail("expected digits after decimal point");
      }
      const std::size_t frac_start = pos_;
      mp::cpp_int frac = digits();
      const auto places = static_cast<unsigned>(pos_ - frac_start);
      const mp::cpp_int scale = mp::pow(mp::cpp_int(10), places);
      return constant(Rational(whole * scale + frac, scale));
    }
    if (pos_ == start) fail("expected a number");
    // A '/' may follow after whitespace: "1 / 2".
    const std::size_t before_slash = pos_;
    skip_space();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_space();
      if (at_end() || !is_digit(peek())) fail("expected denominator");
      const std::size_t den_pos = pos_;
      mp::cpp_int den = digits();
      if (den == 0) fail("zero denominator", den_pos);
      return constant(Rational(whole, den));
    }
    pos_ = before_slash;
    return constant(Rational(whole));
  }

  static Terms constant(const Rational& q) {
    Terms t;
    if (q != 0) t.emplace(Mask{0}, q);
    return t;
  }

  mp::cpp_int digits() {
    mp::cpp_int value = 0;
    while (!at_end() && is_digit(peek())) {
      value = value * 10 + (peek() - '0');
      ++pos_;
    }
    return value;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                         peek() == '\r')) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError("parse error at column " + std::to_string(at + 1) + ": " +
                         msg,
                     at);
  }

  std::string_view text_;
  std::optional<int> declared_n_;
  std::size_t pos_ = 0;
  int max_index_ = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto at = line.find(sep, start);
    out.push_back(trim(line.substr(start, at - start)));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

template <typename T>
std::optional<T> parse_number(std::string_view field) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return value;
}

std::optional<int> header_n(std::string_view comment) {
  // comment without the leading '#'
  comment = trim(comment);
  if (comment.size() < 3 || comment.substr(0, 1) != "n") return std::nullopt;
  comment = trim(comment.substr(1));
  if (comment.empty() || comment.front() != '=') return std::nullopt;
  return parse_number<int>(trim(comment.substr(1)));
}

std::string term_body(Mask mask, const std::string& magnitude,
                      bool magnitude_is_one) {
  if (mask == 0) return magnitude;
  if (magnitude_is_one) return monomial_name(mask);
  return magnitude + "*" + monomial_name(mask);
}

template <typename Coeff, typename Format>
std::string serialize_terms(const std::map<Mask, Coeff>& coeffs,
                            Format format_term) {
  if (coeffs.empty()) return "0";
  std::vector<std::pair<Mask, Coeff>> ordered(coeffs.begin(), coeffs.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) {
                     const int pa = std::popcount(a.first);
                     const int pb = std::popcount(b.first);
                     return pa != pb ? pa < pb : a.first < b.first;
                   });
  std::string out;
  bool first = true;
  for (const auto& [mask, c] : ordered) {
    const bool negative = c < 0;
    const std::string body = format_term(mask, c);
    if (first) {
      out += negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace

RationalPolynomial::RationalPolynomial(int n, Coefficients coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  if (n < 1 || n > kMaxPolyVars) {
    throw InputError("number of variables must be in [1, " +
                     std::to_string(kMaxPolyVars) + "]");
  }
  const Mask allowed = n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  for (const auto& [mask, c] : coeffs_) {
    if ((mask & ~allowed) != 0) {
      throw InputError("monomial does not fit in " + std::to_string(n) +
                       " variables");
    }
  }
  drop_zeros(coeffs_);
}

MultilinearPolynomial RationalPolynomial::to_real() const {
  MultilinearPolynomial::Coefficients real;
  for (const auto& [mask, c] : coeffs_) {
    real.emplace_hint(real.end(), mask, to_double(c));
  }
  return MultilinearPolynomial(n_, std::move(real));
}

double to_double(const Rational& q) {
  if (q == 0) return 0.0;
  const bool negative = q < 0;
  const mp::cpp_int a = mp::abs(mp::numerator(q));
  const mp::cpp_int b = mp::denominator(q);
  // Scale so the integer quotient carries 54 or 55 significant bits.
  const long shift = 54 - (static_cast<long>(mp::msb(a)) -
                           static_cast<long>(mp::msb(b)));
  mp::cpp_int num = a;
  mp::cpp_int den = b;
  if (shift >= 0) {
    num <<= static_cast<unsigned>(shift);
  } else {
    den <<= static_cast<unsigned>(-shift);
  }
  mp::cpp_int quotient;
  mp::cpp_int remainder;
  mp::divide_qr(num, den, quotient, remainder);
  const auto bits = static_cast<int>(mp::msb(quotient)) + 1;
  const int extra = bits - 53;
  const auto qv = quotient.convert_to<std::uint64_t>();
  const std::uint64_t low = qv & ((std::uint64_t{1} << extra) - 1);
  const std::uint64_t half = std::uint64_t{1} << (extra - 1);
  std::uint64_t mantissa = qv >> extra;
  const bool sticky = remainder != 0;
  if (low > half || (low == half && (sticky || (mantissa & 1U)))) ++mantissa;
  const double magnitude =
      std::ldexp(static_cast<double>(mantissa), extra - static_cast<int>(shift));
  return negative ? -magnitude : magnitude;
}

RationalPolynomial parse_poly_exact(const PolySource& src) {
  return ExpressionParser(src.text, src.declared_n).parse();
}

MultilinearPolynomial parse_poly(const PolySource& src) {
  return parse_poly_exact(src).to_real();
}

TruthTable parse_table(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return parse_table_json(text);
  }
  return parse_table_csv(text);
}

TruthTable parse_table_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid table JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("values")) {
    throw ParseError("table JSON must be an object with \"n\" and \"values\"",
                     0);
  }
  if (!doc["n"].is_number_integer()) {
    throw ParseError("table JSON \"n\" must be an integer", 0);
  }
  const int n = doc["n"].get<int>();
  check_enumerable(n);
  const auto& values = doc["values"];
  if (!values.is_array()) {
    throw ParseError("table JSON \"values\" must be an array", 0);
  }
  if (values.size() != (std::size_t{1} << n)) {
    throw ParseError("expected " + std::to_string(std::size_t{1} << n) +
                         " values for n = " + std::to_string(n) + ", got " +
                         std::to_string(values.size()),
                     0);
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number()) {
      throw ParseError("value " + std::to_string(i) + " is not a number", 0);
    }
    out.push_back(values[i].get<double>());
  }
  return TruthTable(n, std::move(out));
}

TruthTable parse_table_csv(std::string_view text) {
  std::optional<int> n;
  std::optional<std::vector<std::string_view>> columns;
  std::vector<double> values;
  std::vector<bool> seen;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;

  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("table line " + std::to_string(line_no) + ": " + msg,
                     line_no);
  };

  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const std::string_view line =
        trim(text.substr(start, end == std::string_view::npos
                                    ? std::string_view::npos
                                    : end - start));
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (auto k = header_n(line.substr(1))) {
        if (n) fail("duplicate n header");
        check_enumerable(*k);
        n = *k;
        values.assign(std::size_t{1} << *n, 0.0);
        seen.assign(values.size(), false);
      }
      continue;
    }
    if (!n) fail("missing '# n=<k>' header before data");
    const auto fields = split(line, ',');
    if (!columns) {
      columns = fields;
      const bool index_form = fields.size() == 2 && fields[0] == "index";
      bool point_form =
          fields.size() == static_cast<std::size_t>(*n) + 1;
      for (int j = 0; point_form && j < *n; ++j) {
        point_form = fields[static_cast<std::size_t>(j)] ==
                     "x" + std::to_string(j + 1);
      }
      if ((!index_form && !point_form) || fields.back() != "value") {
        fail("header must be 'index,value' or 'x1,...,xn,value'");
      }
      continue;
    }
    if (fields.size() != columns->size()) {
      fail("expected " + std::to_string(columns->size()) + " fields, got " +
           std::to_string(fields.size()));
    }
    std::size_t index = 0;
    if (columns->size() == 2 && (*columns)[0] == "index") {
      const auto parsed = parse_number<std::size_t>(fields[0]);
      if (!parsed) fail("unparseable index '" + std::string(fields[0]) + "'");
      if (*parsed >= values.size()) {
        fail("index " + std::to_string(*parsed) + " out of range");
      }
      index = *parsed;
    } else {
      Point point;
      for (int j = 0; j < *n; ++j) {
        const auto coord = parse_number<int>(fields[static_cast<std::size_t>(j)]);
        if (!coord || (*coord != 1 && *coord != -1)) {
          fail("point entry '" +
               std::string(fields[static_cast<std::size_t>(j)]) +
               "' is not +1 or -1");
        }
        point.push_back(*coord);
      }
      index = index_of_point(point);
    }
    const auto value = parse_number<double>(fields.back());
    if (!value) fail("unparseable value '" + std::string(fields.back()) + "'");
    if (seen[index]) fail("duplicate index " + std::to_string(index));
    seen[index] = true;
    values[index] = *value;
    ++rows;
  }
  if (!n) throw ParseError("missing '# n=<k>' header", 0);
  if (rows != values.size()) {
    throw ParseError("expected " + std::to_string(values.size()) +
                         " rows for n = " + std::to_string(*n) + ", got " +
                         std::to_string(rows),
                     line_no);
  }
  return TruthTable(*n, std::move(values));
}

std::string monomial_name(Mask mask) {
  if (mask == 0) return "1";
  std::string out;
  for (Mask m = mask; m != 0; m &= m - 1) {
    if (!out.empty()) out += '*';
    out += 'x';
    out += std::to_string(std::countr_zero(m) + 1);
  }
  return out;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  const bool negative = value < 0;
  const double x = std::abs(value);
  const std::string sign = negative ? "-" : "";
  if (x < 9007199254740992.0 && x == std::floor(x)) {
    return sign + std::to_string(static_cast<std::int64_t>(x));
  }
  if (x < 1e12) {
    // Continued-fraction convergents; accept the first one that reproduces
    // the double exactly.
    std::int64_t h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
      const double a = std::floor(r);
      const auto ai = static_cast<std::int64_t>(a);
      const std::int64_t h = ai * h1 + h2;
      const std::int64_t k = ai * k1 + k2;
      if (k > 1000000) break;
      if (static_cast<double>(h) / static_cast<double>(k) == x) {
        return sign + std::to_string(h) + "/" + std::to_string(k);
      }
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = k;
      const double frac = r - a;
      if (frac <= 0.0) break;
      r = 1.0 / frac;
    }
  }
  char buf[512];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed);
  if (ec != std::errc()) return sign + std::to_string(x);
  return sign + std::string(buf, ptr);
}

std::string serialize_poly(const MultilinearPolynomial& poly) {
  return serialize_terms(poly.coefficients(), [](Mask mask, double c) {
    const double magnitude = std::abs(c);
    return term_body(mask, format_number(magnitude), magnitude == 1.0);
  });
}

std::string serialize_poly(const RationalPolynomial& poly) {
  return serialize_terms(
      poly.coefficients(), [](Mask mask, const Rational& c) {
        const Rational magnitude = mp::abs(c);
        std::string text = mp::numerator(magnitude).str();
        if (mp::denominator(magnitude) != 1) {
          text += "/" + mp::denominator(magnitude).str();
        }
        return term_body(mask, text, magnitude == 1);
      });
}

}  // namespace compwire
