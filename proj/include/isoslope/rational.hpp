#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace isoslope {

// Exact rationals are GMP's mpq_class, always kept canonical.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "a", "-a", "a/b"; throws Error(MalformedInput) otherwise.
Rational parse_rational(std::string_view text);

}  // namespace isoslope
