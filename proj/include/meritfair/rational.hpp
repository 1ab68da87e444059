#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace meritfair {

using Rational = boost::rational<std::int64_t>;

/// "a/b" in lowest terms; integers render without a denominator ("1", "0").
std::string to_string(const Rational& r);

double to_double(const Rational& r) noexcept;

/// Parses "a/b", an integer, or a plain decimal ("0.75", ".1"). Decimals are
/// converted exactly; at most 12 fractional digits are accepted so that
/// downstream products with population counts stay inside 64 bits.
Rational parse_rational(std::string_view text);

/// parse_rational restricted to [0, 1].
Rational parse_probability(std::string_view text);

bool is_probability(const Rational& r) noexcept;

}  // namespace meritfair
