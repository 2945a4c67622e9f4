#include "subexp/hull.hpp"

namespace subexp {

namespace {

// Phase-I simplex with Bland's rule on: find lambda >= 0 with
// A lambda = b, where A is (d+1) x k and b >= 0 after row flips.
struct Tableau {
  std::size_t rows, cols;  // cols = k + rows (+1 for rhs stored separately)
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> rhs;
  std::vector<std::size_t> basis;  // column index per row
  std::vector<Rational> obj;       // reduced objective row over all columns
  Rational obj_value;
};

}  // namespace

HullResult point_in_hull(const std::vector<std::vector<Rational>>& points,
                         const std::vector<Rational>& target) {
  if (points.empty()) fail_precondition("hull test needs at least one point");
  const std::size_t d = target.size();
  for (const auto& p : points)
    if (p.size() != d) fail_precondition("hull points have mismatched dimension");
  const std::size_t k = points.size();
  const std::size_t m = d + 1;

  // Constraint matrix (columns are points, last row all ones) with row
  // flips making the right side nonnegative.
  std::vector<int> flip(m, 1);
  Tableau t;
  t.rows = m;
  t.cols = k + m;
  t.a.assign(m, std::vector<Rational>(t.cols, Rational(0)));
  t.rhs.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    const Rational b = r < d ? target[r] : Rational(1);
    flip[r] = b < 0 ? -1 : 1;
    t.rhs[r] = flip[r] * b;
    for (std::size_t j = 0; j < k; ++j) {
      const Rational v = r < d ? points[j][r] : Rational(1);
      t.a[r][j] = flip[r] * v;
    }
    t.a[r][k + r] = 1;  // artificial
  }
  t.basis.resize(m);
  for (std::size_t r = 0; r < m; ++r) t.basis[r] = k + r;

  // Reduced costs for min sum(artificials): obj_j = c_j - sum over rows of a[r][j].
  t.obj.assign(t.cols, Rational(0));
  t.obj_value = 0;
  for (std::size_t j = 0; j < t.cols; ++j) {
    Rational c = j >= k ? Rational(1) : Rational(0);
    for (std::size_t r = 0; r < m; ++r) c -= t.a[r][j];
    t.obj[j] = c;
  }
  for (std::size_t r = 0; r < m; ++r) t.obj_value += t.rhs[r];

  for (int guard = 0; guard < 100000; ++guard) {
    // Bland: smallest-index column with negative reduced cost.
    std::size_t enter = t.cols;
    for (std::size_t j = 0; j < t.cols; ++j) {
      if (t.obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == t.cols) break;

    // Ratio test, Bland tie-break on basis index.
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t r = 0; r < m; ++r) {
      if (t.a[r][enter] <= 0) continue;
      const Rational ratio = t.rhs[r] / t.a[r][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[r] < t.basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == m) fail_overflow("unbounded phase-one objective");

    // Pivot.
    const Rational piv = t.a[leave][enter];
    for (auto& v : t.a[leave]) v /= piv;
    t.rhs[leave] /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave) continue;
      const Rational f = t.a[r][enter];
      if (f == 0) continue;
      for (std::size_t j = 0; j < t.cols; ++j) t.a[r][j] -= f * t.a[leave][j];
      t.rhs[r] -= f * t.rhs[leave];
    }
    const Rational fo = t.obj[enter];
    if (fo != 0) {
      for (std::size_t j = 0; j < t.cols; ++j) t.obj[j] -= fo * t.a[leave][j];
    }
    t.basis[leave] = enter;
  }

  // Objective value read off the final basis.
  t.obj_value = 0;
  for (std::size_t r = 0; r < m; ++r)
    if (t.basis[r] >= k) t.obj_value += t.rhs[r];

  HullResult result;
  if (t.obj_value == 0) {
    result.inside = true;
    result.lambda.assign(k, Rational(0));
    for (std::size_t r = 0; r < m; ++r)
      if (t.basis[r] < k) result.lambda[t.basis[r]] = t.rhs[r];
    // Re-verify the combination.
    Rational sum(0);
    for (const auto& l : result.lambda) {
      if (l < 0) throw Error(Error::Kind::Internal, "hull: negative weight");
      sum += l;
    }
    if (sum != 1) throw Error(Error::Kind::Internal, "hull: weights do not sum to one");
    for (std::size_t r = 0; r < d; ++r) {
      Rational acc(0);
      for (std::size_t j = 0; j < k; ++j) acc += result.lambda[j] * points[j][r];
      if (acc != target[r]) throw Error(Error::Kind::Internal, "hull: combination mismatch");
    }
    return result;
  }

  // Infeasible: dual multipliers from the artificial reduced costs,
  // y_r = (1 - obj[k+r]) * flip_r in original row coordinates.
  result.inside = false;
  std::vector<Rational> y(m);
  for (std::size_t r = 0; r < m; ++r) y[r] = (Rational(1) - t.obj[k + r]) * flip[r];
  result.separator.assign(d, Rational(0));
  for (std::size_t r = 0; r < d; ++r) result.separator[r] = y[r];
  result.separator_offset = y[d];

  // Re-verify: phi . v_j + offset <= 0 for all points, phi . w + offset > 0.
  for (std::size_t j = 0; j < k; ++j) {
    Rational s = result.separator_offset;
    for (std::size_t r = 0; r < d; ++r) s += result.separator[r] * points[j][r];
    if (s > 0) throw Error(Error::Kind::Internal, "hull: separator fails on a point");
  }
  Rational g = result.separator_offset;
  for (std::size_t r = 0; r < d; ++r) g += result.separator[r] * target[r];
  if (g <= 0) throw Error(Error::Kind::Internal, "hull: separator fails on the target");
  result.gap = g;
  return result;
}

}  // namespace subexp
