#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ising_pbw {

using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms (mpq_class(num, den) alone does not reduce).
Rational ratio(long num, long den);

/// Canonical "num/den" form, lowest terms, den > 0 (integers print as "n/1").
std::string to_string(const Rational& x);

/// Accepts "n" or "n/d" with optional sign; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace ising_pbw
