#pragma once

#include <gmpxx.h>

#include "mbfreal/errors.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mbfreal {

using Rational = mpq_class;

// Accepts "p", "p/q", "-p/q" and decimal forms such as "3.1" or "-0.25".
Rational parse_rational(std::string_view text);

// Always "p/q" with q >= 1, e.g. "4/1", "41/10".
std::string format_rational(const Rational& q);

std::string format_rationals(const std::vector<Rational>& values, char sep = ' ');
std::vector<Rational> parse_rationals(std::string_view text);

Rational midpoint(const Rational& a, const Rational& b);

}  // namespace mbfreal
