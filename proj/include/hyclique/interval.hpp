#pragma once

// Certified enclosures of real numbers. Endpoints are exact rationals and every
// operation rounds outward to a dyadic grid, so an Interval always contains
// the real value of the expression that produced it.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "hyclique/errors.hpp"
#include "hyclique/numeric.hpp"

namespace hyclique {

inline constexpr unsigned kDefaultPrecisionBits = 256;

namespace detail {

inline Rational round_down(const Rational& x, unsigned bits) {
  if (denominator(x) == 1) return x;
  BigInt scale = BigInt(1) << bits;
  return Rational(floor_div(x * scale), scale);
}

inline Rational round_up(const Rational& x, unsigned bits) {
  if (denominator(x) == 1) return x;
  BigInt scale = BigInt(1) << bits;
  return Rational(ceil_div(x * scale), scale);
}

}  // namespace detail

class Interval {
 public:
  Interval() = default;
  explicit Interval(const Rational& point) : lo_(point), hi_(point) {}
  Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw InvariantViolation("interval with lo > hi");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
  bool positive() const { return lo_ > 0; }

  Interval widened(unsigned bits) const {
    return Interval(detail::round_down(lo_, bits), detail::round_up(hi_, bits));
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_).widened(kDefaultPrecisionBits);
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_).widened(kDefaultPrecisionBits);
  }
  friend Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
    return Interval(*mn, *mx).widened(kDefaultPrecisionBits);
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw InvariantViolation("interval division by an interval containing 0");
    Rational p[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
    auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
    return Interval(*mn, *mx).widened(kDefaultPrecisionBits);
  }

  friend Interval operator+(const Interval& a, const Rational& b) { return a + Interval(b); }
  friend Interval operator-(const Interval& a, const Rational& b) { return a - Interval(b); }
  friend Interval operator-(const Rational& a, const Interval& b) { return Interval(a) - b; }
  friend Interval operator*(const Interval& a, const Rational& b) { return a * Interval(b); }
  friend Interval operator*(const Rational& a, const Interval& b) { return Interval(a) * b; }
  friend Interval operator/(const Interval& a, const Rational& b) { return a / Interval(b); }
  friend Interval operator/(const Rational& a, const Interval& b) { return Interval(a) / b; }

  bool operator==(const Interval&) const = default;

  std::string approx(int digits = 12) const { return to_decimal(midpoint(), digits); }

 private:
  Rational lo_;
  Rational hi_;
};

namespace interval {

namespace detail {

using hyclique::detail::round_down;
using hyclique::detail::round_up;

// exp(z) for 0 <= z <= 1/2 by Taylor series. Terms are rounded toward the
// side of the bound being built; the tail after the last term t_N is at most
// 2 * t_{N+1} because consecutive terms shrink by at least a factor of 2.
inline Interval exp_small(const Rational& z, unsigned bits) {
  Rational lo_sum = 0, hi_sum = 0;
  Rational lo_term = 1, hi_term = 1;
  Rational tolerance(BigInt(1), BigInt(1) << (bits + 2));
  for (unsigned k = 1;; ++k) {
    lo_sum += lo_term;
    hi_sum += hi_term;
    lo_term = round_down(lo_term * z / k, bits + 8);
    hi_term = round_up(hi_term * z / k, bits + 8);
    if (hi_term < tolerance) break;
  }
  hi_sum += 2 * hi_term;
  return Interval(round_down(lo_sum, bits), round_up(hi_sum, bits));
}

// atanh(z) for 0 <= z <= 1/3; the tail is bounded by 2 * (next term) since
// the ratio of consecutive terms is at most z^2 <= 1/9.
inline Interval atanh_small(const Rational& z, unsigned bits) {
  Rational lo_sum = 0, hi_sum = 0;
  Rational lo_pow = z, hi_pow = z;
  Rational z2 = z * z;
  Rational tolerance(BigInt(1), BigInt(1) << (bits + 2));
  for (unsigned i = 0;; ++i) {
    lo_sum += round_down(lo_pow / (2 * i + 1), bits + 8);
    hi_sum += round_up(hi_pow / (2 * i + 1), bits + 8);
    lo_pow = round_down(lo_pow * z2, bits + 8);
    hi_pow = round_up(hi_pow * z2, bits + 8);
    if (hi_pow < tolerance) {
      hi_sum += 2 * hi_pow;
      break;
    }
  }
  return Interval(round_down(lo_sum, bits), round_up(hi_sum, bits));
}

inline Interval ln2(unsigned bits) {
  Interval a = atanh_small(Rational(1, 3), bits + 4);
  return Interval(2 * a.lo(), 2 * a.hi());
}

// Enclosure of exp(x) for a single rational x.
inline Interval exp_point(const Rational& x, unsigned bits) {
  if (x == 0) return Interval(Rational(1));
  bool negative = x < 0;
  Rational y = negative ? Rational(-x) : x;
  unsigned halvings = 0;
  while (y > Rational(1, 2)) {
    y /= 2;
    ++halvings;
  }
  unsigned work = bits + 2 * halvings + 32;
  Interval r = exp_small(y, work);
  for (unsigned i = 0; i < halvings; ++i) {
    r = Interval(round_down(r.lo() * r.lo(), work), round_up(r.hi() * r.hi(), work));
  }
  if (negative) {
    r = Interval(round_down(1 / r.hi(), work), round_up(1 / r.lo(), work));
  }
  return r.widened(bits);
}

// Enclosure of ln(x) for a single rational x > 0.
inline Interval log_point(const Rational& x, unsigned bits) {
  if (x <= 0) throw InvariantViolation("log of a non-positive number");
  if (x == 1) return Interval(Rational(0));
  Rational y = x;
  long shift = 0;
  while (y > Rational(4, 3)) {
    y /= 2;
    ++shift;
  }
  while (y < Rational(2, 3)) {
    y *= 2;
    --shift;
  }
  unsigned work = bits + 32;
  Rational z = (y - 1) / (y + 1);
  Interval core;
  if (z >= 0) {
    Interval a = atanh_small(z, work);
    core = Interval(2 * a.lo(), 2 * a.hi());
  } else {
    Interval a = atanh_small(-z, work);
    core = Interval(-2 * a.hi(), -2 * a.lo());
  }
  if (shift != 0) {
    Interval l2 = ln2(work + 16);
    Rational s(shift);
    Interval scaled = shift > 0 ? Interval(s * l2.lo(), s * l2.hi()) : Interval(s * l2.hi(), s * l2.lo());
    core = Interval(core.lo() + scaled.lo(), core.hi() + scaled.hi());
  }
  return core.widened(bits);
}

inline Rational sqrt_down(const Rational& x, unsigned bits) {
  BigInt scaled = floor_div(x * (BigInt(1) << (2 * bits)));
  return Rational(boost::multiprecision::sqrt(scaled), BigInt(1) << bits);
}

inline Rational sqrt_up(const Rational& x, unsigned bits) {
  BigInt scaled = ceil_div(x * (BigInt(1) << (2 * bits)));
  BigInt root = boost::multiprecision::sqrt(scaled);
  if (root * root != scaled) root += 1;
  return Rational(root, BigInt(1) << bits);
}

}  // namespace detail

/// Euler's number.
inline Interval e(unsigned bits = kDefaultPrecisionBits) { return detail::exp_point(Rational(1), bits); }

inline Interval exp(const Interval& x, unsigned bits = kDefaultPrecisionBits) {
  Interval lo = detail::exp_point(x.lo(), bits);
  Interval hi = x.lo() == x.hi() ? lo : detail::exp_point(x.hi(), bits);
  return Interval(lo.lo(), hi.hi());
}

inline Interval log(const Interval& x, unsigned bits = kDefaultPrecisionBits) {
  if (!x.positive()) throw InvariantViolation("log of an interval that is not strictly positive");
  Interval lo = detail::log_point(x.lo(), bits);
  Interval hi = x.lo() == x.hi() ? lo : detail::log_point(x.hi(), bits);
  return Interval(lo.lo(), hi.hi());
}

inline Interval sqrt(const Interval& x, unsigned bits = kDefaultPrecisionBits) {
  if (x.lo() < 0) throw InvariantViolation("sqrt of an interval with negative part");
  return Interval(detail::sqrt_down(x.lo(), bits), detail::sqrt_up(x.hi(), bits));
}

inline Interval pow(const Interval& base, unsigned exponent) {
  Interval result(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) result = result * base;
  return result;
}

/// base^exponent for a strictly positive base and rational exponent.
inline Interval pow(const Interval& base, const Rational& exponent, unsigned bits = kDefaultPrecisionBits) {
  if (denominator(exponent) == 1 && exponent >= 0 && exponent <= 4096) {
    return pow(base, static_cast<unsigned>(numerator(exponent)));
  }
  if (!base.positive()) throw InvariantViolation("fractional power of a non-positive interval");
  return exp(log(base, bits + 64) * exponent, bits);
}

/// Floor of the enclosed real, or nothing when the enclosure straddles an
/// integer.
inline std::optional<BigInt> certain_floor(const Interval& x) {
  BigInt lo = floor_div(x.lo());
  BigInt hi = floor_div(x.hi());
  if (lo != hi) return std::nullopt;
  return lo;
}

}  // namespace interval

}  // namespace hyclique
