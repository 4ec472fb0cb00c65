#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace peano {

/// Arbitrary-precision integer and exact rational. mpq_class results of
/// arithmetic are always canonical (positive denominator, reduced).
using Integer = mpz_class;
using Rational = mpq_class;

/// Builds n/d in canonical form. Throws std::domain_error on d == 0.
Rational make_rational(const Integer& n, const Integer& d);
Rational make_rational(std::int64_t n, std::int64_t d = 1);

Integer int_pow(const Integer& base, unsigned exp);
Rational rat_pow(const Rational& base, unsigned exp);

/// "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Accepts "p", "p/q", and finite decimals such as "16.9913" or "1e-4".
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// Mixed-number rendering used in reports: "5 43/73".
std::string to_mixed_string(const Rational& r);

Integer to_integer(std::int64_t v);

}  // namespace peano
