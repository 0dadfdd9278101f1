#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace corrauct {

using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q" or a plain integer string. Throws std::invalid_argument on
/// malformed input or a zero denominator.
Rat parse_rat(const std::string& text);

/// Canonical "p/q" form with the denominator always spelled out ("3/2", "0/1").
std::string rat_str(const Rat& value);

double rat_to_double(const Rat& value);

/// Exact conversion of a finite double (every double is a binary rational).
Rat rat_from_double(double value);

/// Nearest multiple of 2^-bits. Used to turn quadrature output into rationals
/// with a shared power-of-two denominator so scaled flow capacities stay small.
Rat quantize_dyadic(double value, int bits);

/// lcm of all denominators (at least 1).
Int common_denominator(std::span<const Rat> values);

}  // namespace corrauct
