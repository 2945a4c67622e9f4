#include "subexp/realset.hpp"

#include <algorithm>

namespace subexp {

void Interval::validate() const {
  if (lo && hi) {
    if (*lo > *hi) fail_input("interval endpoints out of order");
    if (*lo == *hi && !(lo_closed && hi_closed))
      fail_input("degenerate interval must be a closed point");
  }
}

bool Interval::contains(const Rational& x) const {
  if (lo) {
    if (x < *lo) return false;
    if (x == *lo && !lo_closed) return false;
  }
  if (hi) {
    if (x > *hi) return false;
    if (x == *hi && !hi_closed) return false;
  }
  return true;
}

RealSet::RealSet(std::vector<Interval> parts) : parts_(std::move(parts)) {
  for (const auto& p : parts_) p.validate();
  canonicalize();
}

RealSet RealSet::whole_line() {
  RealSet s;
  s.parts_.push_back(Interval{});
  return s;
}

RealSet RealSet::point(const Rational& v) {
  return RealSet({Interval{v, v, true, true}});
}

RealSet RealSet::open(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (lo && hi && *lo >= *hi) return RealSet::empty();
  return RealSet({Interval{lo, hi, false, false}});
}

RealSet RealSet::closed(const Rational& lo, const Rational& hi) {
  if (lo > hi) return RealSet::empty();
  return RealSet({Interval{lo, hi, true, true}});
}

RealSet RealSet::half_open(const Rational& lo, const Rational& hi) {
  if (lo >= hi) return RealSet::empty();
  return RealSet({Interval{lo, hi, false, true}});
}

RealSet RealSet::ray_le(const Rational& x) {
  return RealSet({Interval{std::nullopt, x, false, true}});
}

namespace {

// Strictly-before order on lower ends; -inf first, closed before open.
bool lo_before(const Interval& a, const Interval& b) {
  if (!a.lo) return b.lo.has_value();
  if (!b.lo) return false;
  if (*a.lo != *b.lo) return *a.lo < *b.lo;
  return a.lo_closed && !b.lo_closed;
}

// Does a's upper end strictly precede b's upper end?
bool hi_before(const Interval& a, const Interval& b) {
  if (!a.hi) return false;
  if (!b.hi) return true;
  if (*a.hi != *b.hi) return *a.hi < *b.hi;
  return !a.hi_closed && b.hi_closed;
}

// With a.lo <= b.lo: can the two be merged into one interval?
bool mergeable(const Interval& a, const Interval& b) {
  if (!a.hi) return true;
  if (!b.lo) return true;
  if (*b.lo < *a.hi) return true;
  if (*b.lo == *a.hi) return a.hi_closed || b.lo_closed;
  return false;
}

}  // namespace

void RealSet::canonicalize() {
  if (parts_.empty()) return;
  std::sort(parts_.begin(), parts_.end(), lo_before);
  std::vector<Interval> merged;
  merged.push_back(parts_.front());
  for (std::size_t i = 1; i < parts_.size(); ++i) {
    Interval& last = merged.back();
    const Interval& cur = parts_[i];
    if (mergeable(last, cur)) {
      if (hi_before(last, cur)) {
        last.hi = cur.hi;
        last.hi_closed = cur.hi_closed;
      }
    } else {
      merged.push_back(cur);
    }
  }
  parts_ = std::move(merged);
}

bool RealSet::contains(const Rational& x) const {
  for (const auto& p : parts_)
    if (p.contains(x)) return true;
  return false;
}

bool RealSet::contains_right_of(const Rational& x) const {
  for (const auto& p : parts_) {
    const bool lo_ok = !p.lo || *p.lo < x || *p.lo == x;
    const bool hi_ok = !p.hi || *p.hi > x;
    if (lo_ok && hi_ok) return true;
  }
  return false;
}

bool RealSet::contains_left_of(const Rational& x) const {
  for (const auto& p : parts_) {
    const bool hi_ok = !p.hi || *p.hi > x || *p.hi == x;
    const bool lo_ok = !p.lo || *p.lo < x;
    if (lo_ok && hi_ok) return true;
  }
  return false;
}

bool RealSet::contains_plus_inf() const {
  return !parts_.empty() && !parts_.back().hi.has_value();
}

bool RealSet::contains_minus_inf() const {
  return !parts_.empty() && !parts_.front().lo.has_value();
}

RealSet RealSet::complement() const {
  if (parts_.empty()) return whole_line();
  std::vector<Interval> out;
  const Interval& first = parts_.front();
  if (first.lo)
    out.push_back(Interval{std::nullopt, first.lo, false, !first.lo_closed});
  for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
    const Interval& a = parts_[i];
    const Interval& b = parts_[i + 1];
    out.push_back(Interval{a.hi, b.lo, !a.hi_closed, !b.lo_closed});
  }
  const Interval& last = parts_.back();
  if (last.hi)
    out.push_back(Interval{last.hi, std::nullopt, !last.hi_closed, false});
  RealSet s;
  for (auto& p : out) {
    p.validate();
    s.parts_.push_back(p);
  }
  s.canonicalize();
  return s;
}

RealSet RealSet::union_with(const RealSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  RealSet s;
  s.parts_ = std::move(all);
  s.canonicalize();
  return s;
}

RealSet RealSet::interior() const {
  std::vector<Interval> out;
  for (const auto& p : parts_) {
    if (p.lo && p.hi && *p.lo == *p.hi) continue;  // isolated point
    out.push_back(Interval{p.lo, p.hi, false, false});
  }
  RealSet s;
  s.parts_ = std::move(out);
  s.canonicalize();
  return s;
}

RealSet RealSet::closure() const {
  std::vector<Interval> out;
  for (const auto& p : parts_) {
    Interval q = p;
    if (q.lo) q.lo_closed = true;
    if (q.hi) q.hi_closed = true;
    out.push_back(q);
  }
  RealSet s;
  s.parts_ = std::move(out);
  s.canonicalize();
  return s;
}

std::vector<Rational> RealSet::boundary_points() const {
  std::vector<Rational> pts;
  for (const auto& p : parts_) {
    if (p.lo) pts.push_back(*p.lo);
    if (p.hi) pts.push_back(*p.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

bool RealSet::is_open() const {
  for (const auto& p : parts_) {
    if (p.lo && p.lo_closed) return false;
    if (p.hi && p.hi_closed) return false;
  }
  return true;
}

bool RealSet::is_closed() const {
  for (const auto& p : parts_) {
    if (p.lo && !p.lo_closed) return false;
    if (p.hi && !p.hi_closed) return false;
  }
  return true;
}

bool RealSet::operator==(const RealSet& o) const {
  if (parts_.size() != o.parts_.size()) return false;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const Interval& a = parts_[i];
    const Interval& b = o.parts_[i];
    if (a.lo.has_value() != b.lo.has_value() || a.hi.has_value() != b.hi.has_value())
      return false;
    if (a.lo && (*a.lo != *b.lo || a.lo_closed != b.lo_closed)) return false;
    if (a.hi && (*a.hi != *b.hi || a.hi_closed != b.hi_closed)) return false;
  }
  return true;
}

}  // namespace subexp
