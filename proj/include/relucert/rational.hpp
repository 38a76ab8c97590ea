// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace relucert {

// Exact rational scalar (GMP-backed, always canonical: den > 0, gcd(|num|, den) = 1).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;  // row-major, weights[out][in]

/// Parses "p/q", integer, or decimal ("-0.125", "2.5e-2") text into an exact rational.
/// Decimal literals convert exactly (0.1 becomes 1/10). Throws FormatError on garbage
/// or zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& value);

Rational dot(const RatVec& a, const RatVec& b);
RatVec mat_vec(const RatMat& m, const RatVec& x);
RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rational& s, const RatVec& v);

}  // namespace relucert
