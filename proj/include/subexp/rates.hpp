#pragma once

#include <optional>

#include "subexp/enclosure.hpp"

namespace subexp {

enum class Parity { Even, Odd };

enum class RateFamily { Power, Geometric, LogPow, Constant };

/// Finite or signed-infinite limit value.
struct LimitVal {
  int inf = 0;  // 0 finite, +1 plus infinity, -1 minus infinity
  Rational value;

  static LimitVal finite(Rational v) { return LimitVal{0, std::move(v)}; }
  static LimitVal plus_inf() { return LimitVal{+1, Rational(0)}; }
  static LimitVal minus_inf() { return LimitVal{-1, Rational(0)}; }
  bool is_finite() const { return inf == 0; }
  bool operator==(const LimitVal& o) const {
    return inf == o.inf && (inf != 0 || value == o.value);
  }
};

/// One amplitude family a_n:
///   power:      a_n = n^(-p), rational p != 0 (p < 0 grows)
///   geometric:  a_n = r^n, 0 < r < 1
///   logpow:     a_n = (log(n+1))^(-q), rational q > 0
///   constant:   a_n = c
/// The alternating wrapper multiplies by (-1)^n (sign flips on odd n).
struct Rate {
  RateFamily family = RateFamily::Constant;
  Rational param;
  bool alternating = false;

  void validate() const;

  /// Limit of a_n through even or odd indices.
  LimitVal limit_along(Parity parity) const;
  /// Finite limit of the full sequence, when one exists.
  std::optional<Rational> full_limit() const;

  bool decays_to_zero() const;
  bool grows() const { return family == RateFamily::Power && param < 0; }

  /// Exact a_n when representable (sign included).
  std::optional<Rational> exact_value_at(const Integer& n) const;
  /// Certified |a_n| with width <= tol.
  Enclosure abs_value_at(const Integer& n, const Rational& tol) const;
  /// Certified a_n.
  Enclosure value_at(const Integer& n, const Rational& tol) const;

  /// sup_{n >= 1} |a_n|; nullopt for growth families.
  std::optional<Rational> abs_sup_upper(const Rational& tol) const;

  /// Decides sum_n |a_n|^s < infinity for rational s > 0.
  bool series_abs_converges(const Rational& s) const;

  bool operator==(const Rate& o) const {
    return family == o.family && param == o.param && alternating == o.alternating;
  }
};

int parity_sign(Parity parity);  // +1 on even indices, -1 on odd
Parity parity_of(const Integer& n);
const char* family_name(RateFamily f);

}  // namespace subexp
