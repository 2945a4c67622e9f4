#pragma once

#include <vector>

#include "subexp/rational.hpp"

namespace subexp {

/// Result of an exact membership test of `target` in conv(points).
/// Both outcomes carry a certificate that has been re-verified:
///   inside:  lambda >= 0, sum lambda = 1, sum lambda_i v_i = target
///   outside: functional phi and offset with phi.v_i + offset <= 0 for all i
///            and phi.target + offset = gap > 0
struct HullResult {
  bool inside = false;
  std::vector<Rational> lambda;
  std::vector<Rational> separator;
  Rational separator_offset;
  Rational gap;
};

HullResult point_in_hull(const std::vector<std::vector<Rational>>& points,
                         const std::vector<Rational>& target);

}  // namespace subexp
