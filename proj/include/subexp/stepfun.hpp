#pragma once

#include <string>
#include <vector>

#include "subexp/model.hpp"

namespace subexp {

/// Right-continuous step function: `initial` before the first jump, then the
/// value attached to the largest jump point <= x.
struct StepFunction {
  Rational initial;
  std::vector<std::pair<Rational, Rational>> steps;  // ascending x, value from x onward

  Rational value(const Rational& x) const;
  Rational left_limit(const Rational& x) const;
  bool has_jump_at(const Rational& x) const;
  /// Drops steps that do not change the value.
  void normalize();
};

struct DistributionPair {
  StepFunction upper;  // x -> E[I(X <= x)]
  StepFunction lower;  // x -> -E[-I(X <= x)]
};

DistributionPair distribution_pair(const CredalModel& model, const RandomVariable& x);

/// "x,F_upper,F_lower" rows on the jump grid plus flanking midpoints,
/// 12-digit decimals.
std::string distribution_pair_csv(const DistributionPair& pair);

}  // namespace subexp
