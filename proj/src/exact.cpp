#include "rotinv/exact.hpp"

#include <cmath>
#include <limits>

#include "rotinv/errors.hpp"

namespace rotinv {

Integer factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  Integer out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

Integer binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Integer out = 1;
  for (int i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

Integer catalan(int n) { return binomial(2 * n, n) / (n + 1); }

Integer power_of_two(int e) {
  if (e < 0) throw DomainError("negative exponent for an integer power of two");
  Integer out = 1;
  out <<= e;
  return out;
}

Rational power_of_two_rational(int e) {
  if (e >= 0) return Rational(power_of_two(e));
  return Rational(Integer(1), power_of_two(-e));
}

Integer require_integer(const Rational& value, const std::string& what) {
  if (boost::multiprecision::denominator(value) != 1) {
    throw InternalError(what + " is not an integer: " + value.str());
  }
  return boost::multiprecision::numerator(value);
}

std::int64_t to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw InternalError("integer does not fit in 64 bits: " + value.str());
  }
  return value.convert_to<std::int64_t>();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational exact_rational(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot convert a non-finite value exactly");
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every finite double
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  return Rational(Integer(scaled)) * power_of_two_rational(exponent - 53);
}

std::string to_string(const Rational& value) { return value.str(); }

}  // namespace rotinv
