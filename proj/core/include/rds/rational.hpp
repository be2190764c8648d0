#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace rds {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Exact value of a finite double.
Rational exact(double value);

/// Parses "n", "n/d" or a decimal literal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);

/// "n/d" (or "n" when the denominator is 1).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational pow2(int exponent);

BigInt floor_div(const Rational& value);

std::int64_t to_int64(const BigInt& value);

}  // namespace rds
