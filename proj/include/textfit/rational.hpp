#pragma once

#include <boost/rational.hpp>

#include <string>
#include <string_view>

namespace textfit {

// Exact scalar used for every bound, coefficient, cost and ratio in the
// model. Constraint feasibility in this problem can be knife-edge (an
// average sentence length hitting the limit exactly), so nothing in the
// evaluation path goes through floating point.
using Rational = boost::rational<long long>;

// Accepts an integer ("17", "-3"), a fraction ("21/40", "-3/4") or a
// decimal string ("0.525", "-1.5"). Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// Decimal approximation for human-readable output, e.g. "0.515152".
std::string to_decimal_string(const Rational& value);

}  // namespace textfit
