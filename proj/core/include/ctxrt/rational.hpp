#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ctxrt {

/// Exact arbitrary-precision rational. All probabilities and LP data use it.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", an integer, or a decimal such as "-0.125" or "1e-3" exactly.
/// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical reduced form with the sign on the numerator ("3/4", "-1", "0").
std::string format_rational(const Rational& value);

/// Decimal rendering for human-readable output only.
std::string format_decimal(const Rational& value, int significant_digits = 7);

}  // namespace ctxrt
