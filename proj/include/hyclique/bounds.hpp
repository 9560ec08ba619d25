#pragma once

// Exact evaluation of the closed-form quantities bounding the edge count of
// an n-uniform intersecting family with chromatic number 3.
//
// Integer and rational quantities are exact. Anything involving e, sqrt or
// ln is an Interval with rational endpoints; verdicts never depend on those.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyclique/errors.hpp"
#include "hyclique/interval.hpp"
#include "hyclique/numeric.hpp"

namespace hyclique {

/// The intersection spectrum for parameters (n, m):
/// q = floor(n / 2m), Q = {1..q} u {n-q+1..n}, amplification 1 + 1/(4m).
struct Spectrum {
  int n = 0;
  int m = 0;
  int q = 0;
  std::vector<int> Q;
  Rational tau_amp;

  bool contains(int l) const { return std::binary_search(Q.begin(), Q.end(), l); }

  /// Q without n: the allowed intersections between distinct family members.
  std::vector<int> allowed_intersections() const {
    std::vector<int> out;
    for (int j : Q) {
      if (j != n) out.push_back(j);
    }
    return out;
  }
};

inline Spectrum spectrum(int n, int m) {
  if (n < 1) throw InputError("n must be positive");
  if (m < 2) throw InputError("m = " + std::to_string(m) + " violates the hypothesis m >= 2");
  const int q = n / (2 * m);
  if (q == 0) {
    throw InputError("q = floor(n/2m) = 0 for n = " + std::to_string(n) + ", m = " + std::to_string(m) +
                     ": the hypothesis m <= n/2 fails and Q would be empty");
  }
  Spectrum s{n, m, q, {}, Rational(1) + Rational(1, 4 * m)};
  for (int j = 1; j <= q; ++j) s.Q.push_back(j);
  for (int j = n - q + 1; j <= n; ++j) s.Q.push_back(j);
  ensure(q < n - q + 1, "spectrum halves overlap");
  ensure(static_cast<int>(s.Q.size()) < n, "spectrum covers 1..n");
  return s;
}

/// A(n, m) = sum_{i=0}^{2q} C(n^m, i).
inline BigInt a_value(int n, int m) {
  const Spectrum s = spectrum(n, m);
  const BigInt big_v = ipow(BigInt(n), static_cast<unsigned>(m));
  BigInt sum = 0;
  for (int i = 0; i <= 2 * s.q; ++i) sum += binomial(big_v, static_cast<unsigned>(i));
  return sum;
}

/// n! * sum_{i=1}^{n} 1/i! via D(n) = n D(n-1) + 1, D(1) = 1.
inline BigInt t1_lower(int n) {
  if (n < 1) throw InputError("n must be positive");
  BigInt d = 1;
  for (int i = 2; i <= n; ++i) d = d * i + 1;
  return d;
}

/// Same value by direct summation of n!/i!.
inline BigInt t1_lower_direct(int n) {
  if (n < 1) throw InputError("n must be positive");
  Rational sum = 0;
  for (int i = 1; i <= n; ++i) sum += Rational(BigInt(1), factorial(static_cast<unsigned>(i)));
  Rational value = sum * factorial(static_cast<unsigned>(n));
  ensure(denominator(value) == 1, "n! * sum 1/i! is not an integer");
  return numerator(value);
}

struct CountingReport {
  Rational c;
  Interval d;             // c * e^{2/(ec) - 1}
  Interval closed_bound;  // (e^{3/2} / sqrt(c)) * (n/d)^n
  int a_raw = 0;          // floor((1 - 1/(ec)) n) + 1
  int a_clamped = 0;      // a_raw clamped into 2..n-1
  Rational finite_bound;  // n^{n-a} C(v,a) / C(n,a) at a_clamped
  bool hypothesis_holds = false;  // v <= n^2 / c
};

struct BoundReport {
  int n = 0;
  std::optional<int> m;
  std::optional<int> q;
  std::optional<BigInt> A;
  std::optional<BigInt> A_envelope_times_m;  // (n + m) * C(n^m, 2q), i.e. m * (n/m + 1) C(n^m, 2q)
  bool A_envelope_ok = true;                 // A <= (n/m + 1) C(n^m, 2q)
  std::optional<Interval> A_prime;           // (n/m + 1) (e / 2q)^{n/m}
  BigInt t1_lower;
  BigInt t1_upper;
  std::optional<BigInt> t3_bound;  // 4m n^{n-1} + A
  std::optional<Rational> c;
  std::optional<Interval> t2_form;       // c n^{n-1/2} ln n
  std::vector<BigInt> subset_bounds;     // n^{n-k} for k = 1..n
  std::optional<CountingReport> t4;
  std::vector<std::string> warnings;

  bool t1_ok() const { return t1_lower <= t1_upper; }
  bool t3_beats_t1() const { return t3_bound && *t3_bound < t1_upper; }
};

/// n^{n-a} C(v,a) / C(n,a).
inline Rational counting_bound(int n, std::int64_t v, int a) {
  return Rational(ipow(BigInt(n), static_cast<unsigned>(n - a)) * binomial(v, static_cast<unsigned>(a)),
                  binomial(BigInt(n), static_cast<unsigned>(a)));
}

/// floor((1 - 1/(ec)) n) + 1, refining the enclosure until the floor is certain.
inline int default_a(int n, const Rational& c) {
  for (unsigned bits = kDefaultPrecisionBits; bits <= 8 * kDefaultPrecisionBits; bits *= 2) {
    Interval x = (Rational(1) - Rational(1) / (interval::e(bits) * c)) * Rational(n);
    if (auto f = interval::certain_floor(x)) return static_cast<int>(*f) + 1;
  }
  throw InvariantViolation("could not certify floor((1 - 1/(ec)) n)");
}

inline int clamp_a(int a, int n) { return std::clamp(a, 2, n - 1); }

struct CountingFinite {
  int n = 0;
  std::int64_t v = 0;
  int a_star = 0;
  Rational bound;
  bool a_given = false;
  struct DefaultChoice {
    Rational c;  // n^2 / v
    int a_raw = 0;
    int a_clamped = 0;
    Rational value;
  };
  std::optional<DefaultChoice> default_choice;  // only when n^2 / v > 1
};

inline CountingFinite theorem4_finite(int n, std::int64_t v, std::optional<int> a = std::nullopt) {
  if (n < 3) throw InputError("need n >= 3 so that some integer a lies in (1, n)");
  if (v < n) throw InputError("need v >= n");
  CountingFinite out;
  out.n = n;
  out.v = v;
  if (a) {
    if (*a <= 1 || *a >= n) throw InputError("a = " + std::to_string(*a) + " is not in (1, n)");
    out.a_given = true;
    out.a_star = *a;
    out.bound = counting_bound(n, v, *a);
  } else {
    out.a_star = 2;
    out.bound = counting_bound(n, v, 2);
    for (int i = 3; i <= n - 1; ++i) {
      Rational value = counting_bound(n, v, i);
      if (value < out.bound) {
        out.bound = value;
        out.a_star = i;
      }
    }
  }
  Rational c(BigInt(n) * n, BigInt(v));
  if (c > 1) {
    CountingFinite::DefaultChoice choice;
    choice.c = c;
    choice.a_raw = default_a(n, c);
    choice.a_clamped = clamp_a(choice.a_raw, n);
    choice.value = counting_bound(n, v, choice.a_clamped);
    out.default_choice = choice;
  }
  return out;
}

/// c n^{n-1/2} ln n.
inline Interval t2_form(int n, const Rational& c) {
  Interval root = interval::sqrt(Interval(Rational(n)));
  Interval ln = interval::log(Interval(Rational(n)));
  return Interval(c * Rational(ipow(BigInt(n), static_cast<unsigned>(n - 1)))) * root * ln;
}

/// (n/m + 1) (e / 2q)^{n/m}.
inline Interval a_prime(int n, int m) {
  const Spectrum s = spectrum(n, m);
  Interval base = interval::e() / Rational(2 * s.q);
  return interval::pow(base, Rational(n, m)) * (Rational(n, m) + 1);
}

inline CountingReport counting_report(int n, std::int64_t v, const Rational& c) {
  if (!(c > 1 && c < n)) throw InputError("c = " + to_exact(c) + " is not in (1, n)");
  if (n < 3) throw InputError("need n >= 3 for the counting bound");
  if (v < n) throw InputError("need v >= n");
  CountingReport r;
  r.c = c;
  Interval e = interval::e();
  Interval exponent = Rational(2) / (e * c) - Rational(1);
  r.d = interval::exp(exponent) * c;
  Interval e32 = interval::pow(e, Rational(3, 2));
  Interval root_c = interval::sqrt(Interval(c));
  r.closed_bound = e32 / root_c * interval::pow(Rational(n) / r.d, static_cast<unsigned>(n));
  r.a_raw = default_a(n, c);
  r.a_clamped = clamp_a(r.a_raw, n);
  r.finite_bound = counting_bound(n, v, r.a_clamped);
  r.hypothesis_holds = Rational(v) <= Rational(BigInt(n) * n) / c;
  return r;
}

inline BoundReport bound_report(int n, std::optional<int> m = std::nullopt, std::optional<std::int64_t> v = std::nullopt,
                                std::optional<Rational> c = std::nullopt) {
  if (n < 1) throw InputError("n must be positive");
  BoundReport r;
  r.n = n;
  r.t1_lower = t1_lower(n);
  ensure(r.t1_lower == t1_lower_direct(n), "t1 lower bound recurrence disagrees with direct summation");
  r.t1_upper = ipow(BigInt(n), static_cast<unsigned>(n));
  for (int k = 1; k <= n; ++k) r.subset_bounds.push_back(ipow(BigInt(n), static_cast<unsigned>(n - k)));

  if (m) {
    const Spectrum s = spectrum(n, *m);
    r.m = m;
    r.q = s.q;
    r.A = a_value(n, *m);
    const BigInt big_v = ipow(BigInt(n), static_cast<unsigned>(*m));
    r.A_envelope_times_m = BigInt(n + *m) * binomial(big_v, static_cast<unsigned>(2 * s.q));
    r.A_envelope_ok = *r.A * *m <= *r.A_envelope_times_m;
    r.A_prime = a_prime(n, *m);
    r.t3_bound = BigInt(4 * *m) * ipow(BigInt(n), static_cast<unsigned>(n - 1)) + *r.A;
    if (n < 4) r.warnings.push_back("the n^{n-1} bound with A is only claimed for n >= 4");
  }
  if (c) {
    if (*c <= 0) throw InputError("c must be positive");
    r.c = c;
    if (n >= 2) r.t2_form = t2_form(n, *c);
    if (v) {
      r.t4 = counting_report(n, *v, *c);
      if (!r.t4->hypothesis_holds) r.warnings.push_back("v > n^2/c: the counting bound's hypothesis fails");
      if (r.t4->a_raw != r.t4->a_clamped) {
        r.warnings.push_back("a = " + std::to_string(r.t4->a_raw) + " clamped to " + std::to_string(r.t4->a_clamped));
      }
    }
  } else if (v) {
    r.warnings.push_back("--v without --c: the counting-bound sub-report needs both");
  }
  return r;
}

struct AmplificationCheck {
  int m = 0;
  int k_max = 0;
  Rational sup_value;  // max_{1<=k<=k_max} k / tau^{k-1}
  int argmax = 0;
  bool holds = false;              // sup_value <= 4m
  bool decreasing_at_kmax = false; // f(k_max + 1) < f(k_max): the sweep covers the supremum
};

/// Sweeps k / tau^{k-1} with tau = 1 + 1/(4m). The ratio f(k+1)/f(k) =
/// (k+1)/(k tau) decreases in k, so once it drops below 1 it stays there.
inline AmplificationCheck amplification_check(int m, int k_max) {
  if (m < 2) throw InputError("m must be at least 2");
  if (k_max < 8 * m) throw InputError("k_max must be at least 8m");
  const BigInt base_num = 4 * m;
  const BigInt base_den = 4 * m + 1;
  // f(k) = k (4m)^{k-1} / (4m+1)^{k-1}; compare by cross-multiplication.
  BigInt best_num = 1, best_den = 1;
  int best_k = 1;
  BigInt pow_num = 1, pow_den = 1;
  BigInt at_kmax_num, at_kmax_den;
  for (int k = 1; k <= k_max + 1; ++k) {
    if (k > 1) {
      pow_num *= base_num;
      pow_den *= base_den;
    }
    BigInt num = BigInt(k) * pow_num;
    if (k == k_max) {
      at_kmax_num = num;
      at_kmax_den = pow_den;
    }
    if (k == k_max + 1) break;
    if (num * best_den > best_num * pow_den) {
      best_num = num;
      best_den = pow_den;
      best_k = k;
    }
  }
  AmplificationCheck out;
  out.m = m;
  out.k_max = k_max;
  out.sup_value = Rational(best_num, best_den);
  out.argmax = best_k;
  out.holds = out.sup_value <= 4 * m;
  BigInt next_num = BigInt(k_max + 1) * pow_num;
  out.decreasing_at_kmax = next_num * at_kmax_den < at_kmax_num * pow_den;
  return out;
}

}  // namespace hyclique
