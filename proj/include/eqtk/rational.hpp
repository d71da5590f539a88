#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eqtk {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

using RationalVector = std::vector<Rational>;

/// Parses "p/q", an integer, or a finite decimal ("-1.25", "3e-2") exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

/// Exact binary value of a finite double.
Rational from_double(double value);

Rational dot(const RationalVector& a, const RationalVector& b);

RationalVector to_rational(const std::vector<std::int64_t>& coords);

}  // namespace eqtk
