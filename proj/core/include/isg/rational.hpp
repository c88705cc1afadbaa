#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace isg {

using Rational = boost::rational<std::int64_t>;

// Accepts integers ("10", "-3"), finite decimals ("2.5") and fractions ("3/4").
Rational parse_rational(std::string_view text);

// Plain integer when integral, reduced "p/q" otherwise.
std::string format_rational(const Rational& value);

}  // namespace isg
