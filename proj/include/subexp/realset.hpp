#pragma once

#include <optional>
#include <vector>

#include "subexp/rational.hpp"

namespace subexp {

/// One interval; unbounded ends use nullopt. A degenerate closed interval
/// [v,v] is an isolated point.
struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;

  void validate() const;
  bool contains(const Rational& x) const;
};

/// Canonical finite union of disjoint, non-mergeable intervals.
class RealSet {
 public:
  RealSet() = default;
  explicit RealSet(std::vector<Interval> parts);

  static RealSet empty() { return RealSet(); }
  static RealSet whole_line();
  static RealSet point(const Rational& v);
  static RealSet open(const std::optional<Rational>& lo, const std::optional<Rational>& hi);
  static RealSet closed(const Rational& lo, const Rational& hi);
  static RealSet half_open(const Rational& lo, const Rational& hi);  // (lo, hi]
  static RealSet ray_le(const Rational& x);                          // (-inf, x]

  const std::vector<Interval>& parts() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }

  bool contains(const Rational& x) const;
  /// Membership of a right (left) neighborhood of x.
  bool contains_right_of(const Rational& x) const;
  bool contains_left_of(const Rational& x) const;
  /// Membership of a neighborhood of +inf / -inf.
  bool contains_plus_inf() const;
  bool contains_minus_inf() const;

  RealSet complement() const;
  RealSet union_with(const RealSet& other) const;
  RealSet interior() const;
  RealSet closure() const;
  /// Finite endpoints and isolated points of the canonical form.
  std::vector<Rational> boundary_points() const;

  bool is_open() const;
  bool is_closed() const;
  bool operator==(const RealSet& o) const;

 private:
  std::vector<Interval> parts_;
  void canonicalize();
};

}  // namespace subexp
