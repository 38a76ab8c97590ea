// SPDX-License-Identifier: Apache-2.0
#include "relucert/rational.hpp"

#include <cctype>
#include <cstddef>

#include "relucert/error.hpp"

namespace relucert {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (!all_digits(s)) throw FormatError("invalid integer literal: '" + text + "'");
  BigInt v(s);
  return negative ? BigInt(-v) : v;
}

BigInt pow10(long long e) {
  BigInt r = 1;
  for (long long i = 0; i < e; ++i) r *= 10;
  return r;
}

// [sign] digits [. digits] [eE [sign] digits], converted exactly.
Rational parse_decimal(const std::string& text) {
  std::string s = text;
  long long exp10 = 0;
  std::size_t epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string etext = s.substr(epos + 1);
    std::string edigits = etext;
    bool eneg = false;
    if (!edigits.empty() && (edigits[0] == '+' || edigits[0] == '-')) {
      eneg = edigits[0] == '-';
      edigits.erase(0, 1);
    }
    if (!all_digits(edigits) || edigits.size() > 6)
      throw FormatError("invalid exponent in rational literal: '" + text + "'");
    exp10 = std::stoll(edigits);
    if (eneg) exp10 = -exp10;
    s = s.substr(0, epos);
  }
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  std::string digits = s;
  std::size_t dpos = s.find('.');
  if (dpos != std::string::npos) {
    digits = s.substr(0, dpos) + s.substr(dpos + 1);
    exp10 -= static_cast<long long>(s.size() - dpos - 1);
  }
  if (!all_digits(digits)) throw FormatError("invalid rational literal: '" + text + "'");
  BigInt mantissa(digits);
  if (negative) mantissa = -mantissa;
  Rational r(mantissa);
  if (exp10 > 0) {
    r *= Rational(pow10(exp10));
  } else if (exp10 < 0) {
    r /= Rational(pow10(-exp10));
  }
  return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw FormatError("empty rational literal");
  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num = parse_integer(s.substr(0, slash));
    BigInt den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw FormatError("zero denominator in '" + text + "'");
    return Rational(num) / Rational(den);
  }
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos) {
    return parse_decimal(s);
  }
  return Rational(parse_integer(s));
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

RatVec mat_vec(const RatMat& m, const RatVec& x) {
  RatVec out;
  out.reserve(m.size());
  for (const RatVec& row : m) out.push_back(dot(row, x));
  return out;
}

RatVec vec_add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DimensionError("vec_add: length mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DimensionError("vec_sub: length mismatch");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec vec_scale(const Rational& s, const RatVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

}  // namespace relucert
