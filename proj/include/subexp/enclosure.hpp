#pragma once

#include "subexp/rational.hpp"

namespace subexp {

/// Closed rational interval certified to contain an exact real value.
struct Enclosure {
  Rational lo;
  Rational hi;

  Enclosure() : lo(0), hi(0) {}
  Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) fail_precondition("enclosure endpoints out of order");
  }
  static Enclosure exact(const Rational& v) { return Enclosure(v, v); }

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool is_exact() const { return lo == hi; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  Enclosure operator+(const Enclosure& o) const { return Enclosure(lo + o.lo, hi + o.hi); }
  Enclosure operator-(const Enclosure& o) const { return Enclosure(lo - o.hi, hi - o.lo); }
  Enclosure operator-() const { return Enclosure(-hi, -lo); }

  Enclosure scaled(const Rational& c) const {
    return c >= 0 ? Enclosure(c * lo, c * hi) : Enclosure(c * hi, c * lo);
  }
  Enclosure abs() const {
    if (lo >= 0) return *this;
    if (hi <= 0) return Enclosure(-hi, -lo);
    return Enclosure(Rational(0), rational_max(-lo, hi));
  }
};

/// Three-valued certified comparison: 1 if a < b certainly, 0 if a == b
/// certainly (both exact), -1 if a > b certainly; nullopt if undecided.
std::optional<int> enclosure_compare(const Enclosure& a, const Enclosure& b);

/// ln(n), n >= 1; width <= tol.
Enclosure enclose_log_integer(const Integer& n, const Rational& tol);

/// x^e for rational x > 0 and rational e; exact whenever representable.
Enclosure enclose_rational_pow(const Rational& x, const Rational& e, const Rational& tol);

/// e^x for rational x; the result magnitude is guarded.
Enclosure enclose_exp(const Rational& x, const Rational& tol);

/// k-th root of rational x >= 0; exact when x is a perfect k-th power.
Enclosure enclose_root(const Rational& x, unsigned long k, const Rational& tol);

/// (x)^e where x is itself enclosed with x.lo > 0.
Enclosure enclose_pow_of(const Enclosure& x, const Rational& e, const Rational& tol);

/// Exact k-th root when one exists.
std::optional<Rational> exact_root(const Rational& x, unsigned long k);

/// An integer certainly >= e^x (not tight). Guarded against blow-up.
Integer exp_upper_integer(const Rational& x);

/// x^n for rational 0 < x < 1 and arbitrary n >= 0. Astronomically large n
/// collapse to the sound envelope [0, 2^-1024].
Enclosure enclose_shrinking_power(const Rational& x, const Integer& n, const Rational& tol);

}  // namespace subexp
