#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace vpc {

// Exact arbitrary-precision fraction; GMP keeps it reduced with a positive
// denominator after every arithmetic operation.
using Rational = mpq_class;

std::string to_string(const Rational& q);

// Accepts "7", "-3", "3/2", "-10/4" (reduced on return).
Rational parse_rational(std::string_view text);

Rational binomial(long n, long k);

}  // namespace vpc
