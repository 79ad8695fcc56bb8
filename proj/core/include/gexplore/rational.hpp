#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace gx {

using Rational = boost::rational<std::int64_t>;

/// Accepts "3/4", "0.75", "2" and "-1/3". Decimals are converted exactly.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// "3/4", or "2" when the denominator is one.
std::string to_string(const Rational& r);

/// Integer x scaled by a non-negative rational, compared without rounding.
/// These are the only comparisons the budget guards need.
bool scaled_less(std::uint64_t lhs, const Rational& factor, std::uint64_t rhs);
bool scaled_less_equal(std::uint64_t lhs, const Rational& factor, std::uint64_t rhs);

}  // namespace gx
