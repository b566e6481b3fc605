#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rotinv {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Integer factorial(int n);

/// Binomial coefficient; zero when k < 0 or k > n.
Integer binomial(int n, int k);

/// (1/(n+1)) * C(2n, n).
Integer catalan(int n);

/// 2^e for e >= 0.
Integer power_of_two(int e);

/// 2^e as a rational, e of either sign.
Rational power_of_two_rational(int e);

/// Throws InternalError if the value is not an integer.
Integer require_integer(const Rational& value, const std::string& what);

/// Throws InternalError if the value does not fit.
std::int64_t to_int64(const Integer& value);

double to_double(const Rational& value);

/// The exact rational value of a finite double.
Rational exact_rational(double value);

std::string to_string(const Rational& value);

}  // namespace rotinv
