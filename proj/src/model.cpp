#include "subexp/model.hpp"

#include <algorithm>
#include <set>

namespace subexp {

void SampleSpace::validate() const {
  if (atoms.empty()) fail_input("sample space must contain at least one atom");
  std::set<std::string> seen;
  for (const auto& a : atoms)
    if (!seen.insert(a).second) fail_input("duplicate atom label \"" + a + "\"");
}

void Measure::validate(std::size_t atom_count) const {
  if (weights.size() != atom_count)
    fail_input("measure \"" + name + "\" has " + std::to_string(weights.size()) +
               " weights for " + std::to_string(atom_count) + " atoms");
  Rational sum(0);
  for (const auto& w : weights) {
    if (w < 0) fail_input("measure \"" + name + "\" has a negative weight " + fraction_string(w));
    sum += w;
  }
  if (sum != 1)
    fail_input("measure \"" + name + "\" weights sum to " + fraction_string(sum));
}

Rational RandomVariable::max_abs() const {
  Rational m(0);
  for (const auto& v : values) m = rational_max(m, rational_abs(v));
  return m;
}

RandomVariable operator+(const RandomVariable& a, const RandomVariable& b) {
  if (a.size() != b.size()) fail_precondition("random variables live on different spaces");
  RandomVariable out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

RandomVariable operator-(const RandomVariable& a, const RandomVariable& b) {
  if (a.size() != b.size()) fail_precondition("random variables live on different spaces");
  RandomVariable out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

RandomVariable operator-(const RandomVariable& a) {
  RandomVariable out = a;
  for (auto& v : out.values) v = -v;
  return out;
}

RandomVariable operator*(const Rational& c, const RandomVariable& a) {
  RandomVariable out = a;
  for (auto& v : out.values) v *= c;
  return out;
}

EventSet::EventSet(std::vector<std::size_t> m) : members(std::move(m)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

EventSet EventSet::from_mask(std::uint64_t mask, std::size_t atoms) {
  EventSet out;
  for (std::size_t i = 0; i < atoms; ++i)
    if (mask & (std::uint64_t{1} << i)) out.members.push_back(i);
  return out;
}

bool EventSet::contains(std::size_t atom) const {
  return std::binary_search(members.begin(), members.end(), atom);
}

std::uint64_t EventSet::mask(std::size_t atoms) const {
  std::uint64_t m = 0;
  for (auto i : members) {
    if (i >= atoms) fail_precondition("event references an atom outside the space");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

void EventSet::validate(std::size_t atom_count) const {
  for (auto i : members)
    if (i >= atom_count) fail_input("event references atom index " + std::to_string(i));
}

void CredalModel::validate() const {
  space.validate();
  if (measures.empty()) fail_input("credal model needs at least one measure");
  for (const auto& p : measures) p.validate(space.size());
}

Rational CredalModel::linear_expectation(std::size_t k, const RandomVariable& x) const {
  if (x.size() != atom_count()) fail_precondition("random variable does not match the space");
  Rational sum(0);
  const auto& w = measures[k].weights;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0) sum += w[i] * x[i];
  return sum;
}

bool CredalModel::atom_is_polar(std::size_t atom) const {
  for (const auto& p : measures)
    if (p.weights[atom] != 0) return false;
  return true;
}

std::vector<std::size_t> CredalModel::non_polar_atoms() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < atom_count(); ++i)
    if (!atom_is_polar(i)) out.push_back(i);
  return out;
}

std::vector<Rational> CredalModel::capacity_table() const {
  const std::size_t m = atom_count();
  if (m > 12) fail_precondition("exhaustive event table limited to 12 atoms");
  const std::size_t full = std::size_t{1} << m;
  std::vector<Rational> table(full, Rational(0));
  std::vector<Rational> mass(full);
  for (const auto& p : measures) {
    mass[0] = 0;
    for (std::size_t s = 1; s < full; ++s) {
      const std::size_t low = s & (~s + 1);
      std::size_t idx = 0;
      std::size_t tmp = low;
      while (tmp >>= 1) ++idx;
      mass[s] = mass[s ^ low] + p.weights[idx];
    }
    for (std::size_t s = 0; s < full; ++s)
      if (mass[s] > table[s]) table[s] = mass[s];
  }
  return table;
}

Rational upper_expectation(const CredalModel& model, const RandomVariable& x) {
  if (x.size() != model.atom_count())
    fail_precondition("random variable does not match the space");
  Rational best = model.linear_expectation(0, x);
  for (std::size_t k = 1; k < model.measures.size(); ++k)
    best = rational_max(best, model.linear_expectation(k, x));
  return best;
}

Rational lower_expectation(const CredalModel& model, const RandomVariable& x) {
  return -upper_expectation(model, -x);
}

Rational capacity(const CredalModel& model, const EventSet& a) {
  a.validate(model.atom_count());
  Rational best(0);
  for (const auto& p : model.measures) {
    Rational sum(0);
    for (auto i : a.members) sum += p.weights[i];
    best = rational_max(best, sum);
  }
  return best;
}

bool is_polar(const CredalModel& model, const EventSet& a) {
  return capacity(model, a) == 0;
}

RandomVariable indicator(const EventSet& a, std::size_t atoms) {
  RandomVariable out = RandomVariable::constant(Rational(0), atoms);
  for (auto i : a.members) {
    if (i >= atoms) fail_precondition("event references an atom outside the space");
    out[i] = 1;
  }
  return out;
}

RandomVariable lift(const std::function<Rational(const std::vector<Rational>&)>& f,
                    const std::vector<RandomVariable>& args) {
  if (args.empty()) fail_precondition("lift needs at least one argument");
  const std::size_t n = args.front().size();
  for (const auto& a : args)
    if (a.size() != n) fail_precondition("lift arguments live on different spaces");
  RandomVariable out = RandomVariable::constant(Rational(0), n);
  std::vector<Rational> point(args.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < args.size(); ++j) point[j] = args[j][i];
    out[i] = f(point);
  }
  return out;
}

RandomVariable lift1(const std::function<Rational(const Rational&)>& f, const RandomVariable& x) {
  RandomVariable out = x;
  for (auto& v : out.values) v = f(v);
  return out;
}

RandomVariable rv_abs(const RandomVariable& x) {
  return lift1([](const Rational& v) { return rational_abs(v); }, x);
}

RandomVariable rv_min(const RandomVariable& a, const RandomVariable& b) {
  if (a.size() != b.size()) fail_precondition("random variables live on different spaces");
  RandomVariable out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = rational_min(out[i], b[i]);
  return out;
}

RandomVariable rv_max(const RandomVariable& a, const RandomVariable& b) {
  if (a.size() != b.size()) fail_precondition("random variables live on different spaces");
  RandomVariable out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = rational_max(out[i], b[i]);
  return out;
}

RandomVariable rv_abs_pow(const RandomVariable& x, long p) {
  return lift1([p](const Rational& v) { return rational_pow(rational_abs(v), p); }, x);
}

}  // namespace subexp
