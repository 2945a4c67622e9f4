#include "subexp/stepfun.hpp"

#include <algorithm>
#include <set>

namespace subexp {

Rational StepFunction::value(const Rational& x) const {
  Rational v = initial;
  for (const auto& [sx, sv] : steps) {
    if (sx > x) break;
    v = sv;
  }
  return v;
}

Rational StepFunction::left_limit(const Rational& x) const {
  Rational v = initial;
  for (const auto& [sx, sv] : steps) {
    if (sx >= x) break;
    v = sv;
  }
  return v;
}

bool StepFunction::has_jump_at(const Rational& x) const {
  return value(x) != left_limit(x);
}

void StepFunction::normalize() {
  std::vector<std::pair<Rational, Rational>> out;
  Rational prev = initial;
  for (const auto& s : steps) {
    if (s.second == prev) continue;
    out.push_back(s);
    prev = s.second;
  }
  steps = std::move(out);
}

DistributionPair distribution_pair(const CredalModel& model, const RandomVariable& x) {
  model.validate();
  if (x.size() != model.atom_count()) fail_precondition("variable does not match the space");
  std::set<Rational> value_set(x.values.begin(), x.values.end());

  DistributionPair pair;
  pair.upper.initial = 0;
  pair.lower.initial = 0;
  for (const Rational& v : value_set) {
    Rational hi(0), lo(1);
    for (const auto& p : model.measures) {
      Rational mass(0);
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] <= v) mass += p.weights[i];
      hi = rational_max(hi, mass);
      lo = rational_min(lo, mass);
    }
    pair.upper.steps.emplace_back(v, hi);
    pair.lower.steps.emplace_back(v, lo);
  }
  pair.upper.normalize();
  pair.lower.normalize();
  return pair;
}

std::string distribution_pair_csv(const DistributionPair& pair) {
  std::set<Rational> grid;
  for (const auto& s : pair.upper.steps) grid.insert(s.first);
  for (const auto& s : pair.lower.steps) grid.insert(s.first);
  std::vector<Rational> xs(grid.begin(), grid.end());

  std::vector<Rational> rows;
  if (xs.empty()) {
    rows.push_back(Rational(0));
  } else {
    rows.push_back(xs.front() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      rows.push_back(xs[i]);
      if (i + 1 < xs.size()) rows.push_back((xs[i] + xs[i + 1]) / 2);
    }
    rows.push_back(xs.back() + 1);
  }

  std::string out = "x,F_upper,F_lower\n";
  for (const auto& r : rows) {
    out += decimal_string(r) + "," + decimal_string(pair.upper.value(r)) + "," +
           decimal_string(pair.lower.value(r)) + "\n";
  }
  return out;
}

}  // namespace subexp
