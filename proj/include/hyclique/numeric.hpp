#pragma once

// Exact integer and rational helpers shared by every module.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "hyclique/errors.hpp"

namespace hyclique {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, unsigned exponent) {
  BigInt result = 1;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return result;
}

inline Rational rpow(const Rational& base, unsigned exponent) {
  return Rational(ipow(numerator(base), exponent), ipow(denominator(base), exponent));
}

inline BigInt factorial(unsigned n) {
  BigInt result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

/// C(n, k) for arbitrary-size n and small k. Each partial product
/// C(n, i) * (n - i) / (i + 1) is exact.
inline BigInt binomial(const BigInt& n, unsigned k) {
  if (n < 0) return 0;
  if (BigInt(k) > n) return 0;
  BigInt result = 1;
  for (unsigned i = 0; i < k; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

inline BigInt binomial(std::int64_t n, unsigned k) { return binomial(BigInt(n), k); }

inline BigInt floor_div(const Rational& x) {
  BigInt q = numerator(x) / denominator(x);
  if (numerator(x) < 0 && q * denominator(x) != numerator(x)) q -= 1;
  return q;
}

inline BigInt ceil_div(const Rational& x) { return -floor_div(-x); }

/// Exact textual form: "p" for integers, "p/q" otherwise.
inline std::string to_exact(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline std::string to_exact(const BigInt& x) { return x.str(); }

/// Rounded decimal for display only.
inline std::string to_decimal(const Rational& x, int digits = 12) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  Float value = Float(numerator(x)) / Float(denominator(x));
  return value.str(digits);
}

inline std::string to_decimal(const BigInt& x, int digits = 12) {
  return to_decimal(Rational(x), digits);
}

namespace detail {

inline BigInt parse_integer(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw InputError("expected an integer, got '" + std::string(text) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw InputError("expected an integer, got '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text));
}

}  // namespace detail

/// Parses "P/Q" or "P" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(text));
  BigInt num = detail::parse_integer(text.substr(0, slash));
  BigInt den = detail::parse_integer(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace hyclique
