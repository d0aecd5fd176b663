#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace credo {

/// Exact rational number. Resolutions, pmf masses and scaling coefficients
/// are all kept as fractions so that membership tests such as "is lambda*k an
/// integer" never depend on floating-point rounding.
using Fraction = boost::rational<std::int64_t>;

/// Parses "p/q", an integer, or a finite decimal literal such as "0.25".
Fraction parse_fraction(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string format_fraction(const Fraction& f);

inline double to_double(const Fraction& f)
{
    return static_cast<double>(f.numerator()) / static_cast<double>(f.denominator());
}

/// Dyadic approximation with denominator 2^bits, rounded to nearest.
Fraction dyadic_from_double(double x, int bits = 40);

}  // namespace credo
