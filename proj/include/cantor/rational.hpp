// rational.hpp -- exact rational arithmetic (GMP) plus parsing helpers
#pragma once

#include <gmpxx.h>

#include <string>

namespace cantor {

using Rational = mpq_class;

// Parses "a/b" or "a" (base 10, optional leading '-'); throws InvalidInput
// on anything else, including a zero denominator.
Rational parse_rational(const std::string& text);

// Lowest-terms decimal form, "a/b" or plain "a" when the denominator is 1.
std::string rational_str(const Rational& q);

// 2^-k as an exact rational, k >= 0.
Rational pow2_inv(std::size_t k);

}  // namespace cantor
