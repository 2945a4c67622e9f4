#pragma once

#include <string>
#include <vector>

#include "subexp/rates.hpp"
#include "subexp/realset.hpp"

namespace subexp {

/// Bounded piecewise-linear function, possibly with jumps at breakpoints.
/// Outside the breakpoint range both segments are constant.
struct PwFn {
  std::string label;
  std::vector<Rational> xs;                        // ascending breakpoints
  std::vector<Rational> at;                        // value at each breakpoint
  std::vector<std::pair<Rational, Rational>> seg;  // xs.size()+1 pieces (slope, intercept)

  void validate() const;

  Rational eval(const Rational& x) const;
  Rational right_limit(const Rational& x) const;
  Rational left_limit(const Rational& x) const;
  Rational value_at_minus_inf() const { return seg.front().second; }
  Rational value_at_plus_inf() const { return seg.back().second; }

  /// Evaluation at a cluster value approached with a known remainder sign.
  Rational eventual_value(const LimitVal& cluster, int approach_sign) const;

  bool continuous_everywhere() const;
  /// Breakpoints where the function is discontinuous.
  std::vector<Rational> discontinuities() const;

  PwFn negated() const;
};

PwFn pw_indicator(const RealSet& set, const std::string& label);
/// 0 outside [left,right], 1 at peak, linear in between.
PwFn pw_hat(const Rational& left, const Rational& peak, const Rational& right);
/// 1 on [lo,hi], sloping to 0 at lo-1 and hi+1.
PwFn pw_bump(const Rational& lo, const Rational& hi);
/// x clamped to [lo,hi].
PwFn pw_clamp(const Rational& lo, const Rational& hi);
/// Continuous interpolation through (xs, values), constant outside.
PwFn pw_interpolant(const std::vector<Rational>& xs, const std::vector<Rational>& values,
                    const std::string& label);

PwFn pw_add(const PwFn& f, const PwFn& g);
PwFn pw_scale(const PwFn& f, const Rational& c);

}  // namespace subexp
