#include "subexp/sequence.hpp"

#include <algorithm>
#include <map>

namespace subexp {

void SequenceSpec::validate() const {
  if (base.size() == 0) fail_input("sequence base must live on a nonempty space");
  for (const auto& t : terms) {
    t.rate.validate();
    if (t.direction.size() != base.size())
      fail_input("sequence direction does not match the base space");
  }
  for (const auto& p : prefix)
    if (p.size() != base.size()) fail_input("prefix entry does not match the base space");
  if (declared_limit && declared_limit->size() != base.size())
    fail_input("declared limit does not match the base space");
  if (tabulated_only && prefix.empty())
    fail_input("tabulated sequence needs at least one tabulated value");
}

bool SequenceSpec::operator==(const SequenceSpec& o) const {
  if (!(base == o.base) || prefix.size() != o.prefix.size() ||
      terms.size() != o.terms.size() || tabulated_only != o.tabulated_only)
    return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (!(prefix[i] == o.prefix[i])) return false;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (!(terms[i].rate == o.terms[i].rate) || !(terms[i].direction == o.terms[i].direction))
      return false;
  if (declared_limit.has_value() != o.declared_limit.has_value()) return false;
  if (declared_limit && !(*declared_limit == *o.declared_limit)) return false;
  return true;
}

EvalResult eval_at(const SequenceSpec& seq, const Integer& n) {
  if (n < 1) fail_precondition("sequence index must be >= 1");
  if (n <= static_cast<long>(seq.prefix.size())) {
    return EvalResult{seq.prefix[n.get_ui() - 1], true};
  }
  if (seq.tabulated_only)
    fail_precondition("tabulated sequence has no value at n = " + n.get_str());
  RandomVariable out = seq.base;
  bool exact = true;
  const Rational tol = make_rational(1, 1) / rational_pow(Rational(10), 12) /
                       Rational(static_cast<long>(seq.terms.size() + 1));
  for (const auto& term : seq.terms) {
    Rational amplitude;
    if (auto a = term.rate.exact_value_at(n)) {
      amplitude = *a;
    } else {
      amplitude = term.rate.value_at(n, tol).midpoint();
      exact = false;
    }
    if (amplitude == 0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += amplitude * term.direction[i];
  }
  return EvalResult{std::move(out), exact};
}

Enclosure eval_enclosure_at(const SequenceSpec& seq, std::size_t atom, const Integer& n,
                            const Rational& tol) {
  if (n < 1) fail_precondition("sequence index must be >= 1");
  if (n <= static_cast<long>(seq.prefix.size()))
    return Enclosure::exact(seq.prefix[n.get_ui() - 1][atom]);
  if (seq.tabulated_only)
    fail_precondition("tabulated sequence has no value at n = " + n.get_str());
  Enclosure sum = Enclosure::exact(seq.base[atom]);
  const Rational share = tol / Rational(static_cast<long>(seq.terms.size() + 1));
  for (const auto& term : seq.terms) {
    const Rational& d = term.direction[atom];
    if (d == 0) continue;
    const Rational each = share / rational_abs(d);
    sum = sum + term.rate.value_at(n, each).scaled(d);
  }
  return sum;
}

AtomTail atom_tail(const SequenceSpec& seq, std::size_t atom, Parity parity,
                   const Rational& target) {
  if (seq.tabulated_only) fail_precondition("tabulated sequence has no analytic tail");
  Rational finite = seq.base[atom] - target;
  std::vector<DecayTerm> decay;
  std::vector<DecayTerm> growth;  // power with negative exponent, |coeff| n^|p|
  for (const auto& term : seq.terms) {
    const Rational& d = term.direction[atom];
    if (d == 0) continue;
    const int sign = term.rate.alternating ? parity_sign(parity) : +1;
    const Rational coeff = sign > 0 ? d : Rational(-d);
    switch (term.rate.family) {
      case RateFamily::Constant:
        finite += coeff * term.rate.param;
        break;
      case RateFamily::Power:
        if (term.rate.param > 0)
          decay.push_back({coeff, RateFamily::Power, term.rate.param});
        else
          growth.push_back({coeff, RateFamily::Power, term.rate.param});
        break;
      case RateFamily::Geometric:
      case RateFamily::LogPow:
        decay.push_back({coeff, term.rate.family, term.rate.param});
        break;
    }
  }

  AtomTail out;
  out.remainder = merge_decay_terms(std::move(decay));

  // Merge growth terms by exponent; the fastest-growing nonzero coefficient
  // sets the sign of the divergence.
  std::map<Rational, Rational> grown;
  for (const auto& g : growth) grown[g.param] += g.coeff;
  Rational dominant_coeff(0);
  Rational dominant_exp(0);
  bool have_growth = false;
  for (const auto& [p, c] : grown) {
    if (c == 0) continue;
    // p < 0; larger |p| (smaller p) grows faster.
    if (!have_growth || p < dominant_exp) {
      dominant_exp = p;
      dominant_coeff = c;
      have_growth = true;
    }
  }
  if (have_growth)
    out.cluster = dominant_coeff > 0 ? LimitVal::plus_inf() : LimitVal::minus_inf();
  else
    out.cluster = LimitVal::finite(finite);
  return out;
}

LimitStatus limit_rv(const SequenceSpec& seq) {
  seq.validate();
  if (seq.tabulated_only) fail_precondition("tabulated sequence has no analytic limit");
  const std::size_t m = seq.atom_count();
  LimitStatus out;
  out.limit = RandomVariable::constant(Rational(0), m);
  out.defined.assign(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const AtomTail even = atom_tail(seq, i, Parity::Even, Rational(0));
    const AtomTail odd = atom_tail(seq, i, Parity::Odd, Rational(0));
    if (even.cluster.is_finite() && even.cluster == odd.cluster) {
      out.defined[i] = true;
      out.limit[i] = even.cluster.value;
    } else {
      out.no_limit_atoms.push_back(i);
    }
  }
  out.exists_everywhere = out.no_limit_atoms.empty();
  return out;
}

ResolvedLimit resolve_limit(const CredalModel& model, const SequenceSpec& seq) {
  ResolvedLimit out;
  if (seq.declared_limit) {
    out.ok = true;
    out.limit = *seq.declared_limit;
    return out;
  }
  const LimitStatus st = limit_rv(seq);
  out.derived = true;
  out.limit = st.limit;
  for (auto a : st.no_limit_atoms) {
    if (!model.atom_is_polar(a)) {
      out.blocking_atoms.push_back(a);
      continue;
    }
    // Polar atoms never influence a verdict; any fill value works.
    const AtomTail even = atom_tail(seq, a, Parity::Even, Rational(0));
    out.limit[a] = even.cluster.is_finite() ? even.cluster.value : Rational(0);
  }
  out.ok = out.blocking_atoms.empty();
  return out;
}

bool series_converges(const Rate& rate, const Rational& s) {
  rate.validate();
  return rate.series_abs_converges(s);
}

}  // namespace subexp
