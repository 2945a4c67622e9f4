#include "subexp/pwfn.hpp"

#include <algorithm>

namespace subexp {

void PwFn::validate() const {
  if (xs.size() != at.size() || seg.size() != xs.size() + 1)
    fail_precondition("piecewise function shape mismatch");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1])) fail_precondition("breakpoints must be strictly increasing");
  if (!xs.empty() && (seg.front().first != 0 || seg.back().first != 0))
    fail_precondition("outer segments must be constant");
}

namespace {

Rational seg_eval(const std::pair<Rational, Rational>& s, const Rational& x) {
  return s.first * x + s.second;
}

}  // namespace

Rational PwFn::eval(const Rational& x) const {
  if (xs.empty()) return seg.front().second;
  std::size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
  if (i > 0 && xs[i - 1] == x) return at[i - 1];
  return seg_eval(seg[i], x);
}

Rational PwFn::right_limit(const Rational& x) const {
  if (xs.empty()) return seg.front().second;
  std::size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
  return seg_eval(seg[i], x);
}

Rational PwFn::left_limit(const Rational& x) const {
  if (xs.empty()) return seg.front().second;
  std::size_t i = std::lower_bound(xs.begin(), xs.end(), x) - xs.begin();
  return seg_eval(seg[i], x);
}

Rational PwFn::eventual_value(const LimitVal& cluster, int approach_sign) const {
  if (cluster.inf > 0) return value_at_plus_inf();
  if (cluster.inf < 0) return value_at_minus_inf();
  if (approach_sign > 0) return right_limit(cluster.value);
  if (approach_sign < 0) return left_limit(cluster.value);
  return eval(cluster.value);
}

bool PwFn::continuous_everywhere() const { return discontinuities().empty(); }

std::vector<Rational> PwFn::discontinuities() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational l = seg_eval(seg[i], xs[i]);
    const Rational r = seg_eval(seg[i + 1], xs[i]);
    if (l != at[i] || r != at[i]) out.push_back(xs[i]);
  }
  return out;
}

PwFn PwFn::negated() const {
  PwFn out = *this;
  out.label = "-(" + label + ")";
  for (auto& v : out.at) v = -v;
  for (auto& s : out.seg) {
    s.first = -s.first;
    s.second = -s.second;
  }
  return out;
}

PwFn pw_indicator(const RealSet& set, const std::string& label) {
  PwFn f;
  f.label = label;
  std::vector<Rational> cuts = set.boundary_points();
  f.xs = cuts;
  for (const auto& x : cuts) f.at.push_back(set.contains(x) ? Rational(1) : Rational(0));
  // Segment values from open-interval membership probes.
  f.seg.resize(cuts.size() + 1);
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    bool inside;
    if (cuts.empty()) {
      inside = set.contains(Rational(0)) || set.contains_plus_inf();
    } else if (i == 0) {
      inside = set.contains(cuts.front() - 1);
    } else if (i == cuts.size()) {
      inside = set.contains(cuts.back() + 1);
    } else {
      inside = set.contains((cuts[i - 1] + cuts[i]) / 2);
    }
    f.seg[i] = {Rational(0), inside ? Rational(1) : Rational(0)};
  }
  f.validate();
  return f;
}

PwFn pw_hat(const Rational& left, const Rational& peak, const Rational& right) {
  if (!(left < peak && peak < right)) fail_precondition("hat needs left < peak < right");
  PwFn f;
  f.label = "hat@" + fraction_string(peak);
  f.xs = {left, peak, right};
  f.at = {Rational(0), Rational(1), Rational(0)};
  const Rational up = 1 / (peak - left);
  const Rational down = 1 / (peak - right);
  f.seg = {{Rational(0), Rational(0)},
           {up, -up * left},
           {down, -down * right},
           {Rational(0), Rational(0)}};
  f.validate();
  return f;
}

PwFn pw_bump(const Rational& lo, const Rational& hi) {
  if (!(lo <= hi)) fail_precondition("bump needs lo <= hi");
  if (lo == hi) return pw_hat(lo - 1, lo, lo + 1);
  PwFn f;
  f.label = "bump[" + fraction_string(lo) + "," + fraction_string(hi) + "]";
  f.xs = {lo - 1, lo, hi, hi + 1};
  f.at = {Rational(0), Rational(1), Rational(1), Rational(0)};
  f.seg = {{Rational(0), Rational(0)},
           {Rational(1), -(lo - 1)},
           {Rational(0), Rational(1)},
           {Rational(-1), hi + 1},
           {Rational(0), Rational(0)}};
  f.validate();
  return f;
}

PwFn pw_clamp(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) fail_precondition("clamp needs lo < hi");
  PwFn f;
  f.label = "clamp[" + fraction_string(lo) + "," + fraction_string(hi) + "]";
  f.xs = {lo, hi};
  f.at = {lo, hi};
  f.seg = {{Rational(0), lo}, {Rational(1), Rational(0)}, {Rational(0), hi}};
  f.validate();
  return f;
}

PwFn pw_add(const PwFn& f, const PwFn& g) {
  PwFn out;
  out.label = f.label + "+" + g.label;
  std::vector<Rational> xs = f.xs;
  xs.insert(xs.end(), g.xs.begin(), g.xs.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  out.xs = xs;
  for (const auto& x : xs) out.at.push_back(f.eval(x) + g.eval(x));

  // Each merged open region lies inside one linear piece of each addend.
  auto segment_on = [](const PwFn& h, const Rational& probe) {
    std::size_t i = std::upper_bound(h.xs.begin(), h.xs.end(), probe) - h.xs.begin();
    return h.seg[i];
  };
  out.seg.resize(xs.size() + 1);
  for (std::size_t i = 0; i <= xs.size(); ++i) {
    Rational probe;
    if (xs.empty())
      probe = 0;
    else if (i == 0)
      probe = xs.front() - 1;
    else if (i == xs.size())
      probe = xs.back() + 1;
    else
      probe = (xs[i - 1] + xs[i]) / 2;
    const auto sf = segment_on(f, probe);
    const auto sg = segment_on(g, probe);
    out.seg[i] = {sf.first + sg.first, sf.second + sg.second};
  }
  out.validate();
  return out;
}

PwFn pw_scale(const PwFn& f, const Rational& c) {
  PwFn out = f;
  out.label = fraction_string(c) + "*(" + f.label + ")";
  for (auto& v : out.at) v *= c;
  for (auto& s : out.seg) {
    s.first *= c;
    s.second *= c;
  }
  return out;
}

PwFn pw_interpolant(const std::vector<Rational>& xs, const std::vector<Rational>& values,
                    const std::string& label) {
  if (xs.size() != values.size() || xs.empty())
    fail_precondition("interpolant needs matching nonempty samples");
  PwFn f;
  f.label = label;
  f.xs = xs;
  f.at = values;
  f.seg.resize(xs.size() + 1);
  f.seg.front() = {Rational(0), values.front()};
  f.seg.back() = {Rational(0), values.back()};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rational slope = (values[i + 1] - values[i]) / (xs[i + 1] - xs[i]);
    f.seg[i + 1] = {slope, values[i] - slope * xs[i]};
  }
  f.validate();
  return f;
}

}  // namespace subexp
