#include "subexp/spaces.hpp"

#include <algorithm>

namespace subexp {

namespace {

Rational tight_tol() { return Rational(1) / rational_pow(Rational(10), 13); }

// E[|X|^p] as an enclosure; exact rational when p is an integer.
std::pair<Enclosure, std::optional<Rational>> abs_power_expectation(const CredalModel& model,
                                                                    const RandomVariable& x,
                                                                    const Rational& p) {
  if (is_integer(p)) {
    const Rational v = upper_expectation(model, rv_abs_pow(x, p.get_num().get_si()));
    return {Enclosure::exact(v), v};
  }
  // Per-measure sums of |x_i|^p enclosures; the maximum of enclosures.
  const Rational tol = tight_tol() / Rational(static_cast<long>(x.size() + 1));
  Enclosure best = Enclosure::exact(Rational(0));
  bool first = true;
  for (std::size_t k = 0; k < model.measures.size(); ++k) {
    Enclosure sum = Enclosure::exact(Rational(0));
    const auto& w = model.measures[k].weights;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (w[i] == 0) continue;
      const Rational a = rational_abs(x[i]);
      Enclosure term = a == 0 ? Enclosure::exact(Rational(0))
                              : (a == 1 ? Enclosure::exact(Rational(1))
                                        : enclose_rational_pow(a, p, tol));
      sum = sum + term.scaled(w[i]);
    }
    if (first) {
      best = sum;
      first = false;
    } else {
      best = Enclosure(rational_max(best.lo, sum.lo), rational_max(best.hi, sum.hi));
    }
  }
  return {best, std::nullopt};
}

}  // namespace

SeminormReport lp_seminorm(const CredalModel& model, const RandomVariable& x, const Rational& p) {
  model.validate();
  if (p < 1) fail_precondition("seminorm requires p >= 1");
  SeminormReport report;
  report.p = p;
  auto [power, power_exact] = abs_power_expectation(model, x, p);
  report.power = power;
  report.power_exact = power_exact;
  report.exact = power_exact.has_value();

  // Zero detection is exact: the power vanishes iff X vanishes on every
  // charged atom.
  bool zero = true;
  for (auto i : model.non_polar_atoms())
    if (x[i] != 0) zero = false;
  if (zero) {
    report.root = Enclosure::exact(Rational(0));
    report.root_decimal = decimal_string(Rational(0));
    return report;
  }

  const Rational inv_p = 1 / p;
  Enclosure root = power.is_exact() ? enclose_rational_pow(power.lo, inv_p, tight_tol())
                                    : enclose_pow_of(power, inv_p, tight_tol());
  report.root = root;
  report.root_decimal = decimal_string(root.midpoint());
  if (root.is_exact()) report.root_decimal = decimal_string(root.lo);
  return report;
}

Verdict lb_membership(const CredalModel& model, const RandomVariable& x, const Rational& p) {
  model.validate();
  if (p < 1) fail_precondition("membership check requires p >= 1");
  Rational charged_max(0);
  for (auto i : model.non_polar_atoms()) charged_max = rational_max(charged_max, rational_abs(x[i]));
  // First n >= 1 with {|X| > n} uncharged.
  Integer stabilization = charged_max <= 1 ? Integer(1) : ceil_to_integer(charged_max);

  Verdict v = Verdict::pass();
  v.note("stabilization_index", stabilization);
  v.note("bound_ceil_max_abs", ceil_to_integer(rational_max(Rational(1), x.max_abs())));
  // Tail values up to stabilization (capped rendering).
  Integer n(1);
  int listed = 0;
  while (n <= stabilization && listed < 16) {
    RandomVariable tail = x;
    for (std::size_t i = 0; i < x.size(); ++i)
      tail[i] = rational_abs(x[i]) > n ? rational_abs(x[i]) : Rational(0);
    std::string value;
    if (is_integer(p)) {
      value = fraction_string(upper_expectation(model, rv_abs_pow(tail, p.get_num().get_si())));
    } else {
      auto [enc, ex] = abs_power_expectation(model, tail, p);
      value = ex ? fraction_string(*ex) : decimal_string(enc.midpoint());
    }
    v.note("tail_at_" + n.get_str(), value);
    ++n;
    ++listed;
  }
  return v;
}

std::pair<UIReport, Verdict> uniform_integrability_list(const CredalModel& model,
                                                        const std::vector<RandomVariable>& family) {
  model.validate();
  if (family.empty()) fail_precondition("uniform integrability needs a nonempty family");
  Rational c_star(0);
  for (const auto& x : family) c_star = rational_max(c_star, x.max_abs());

  UIReport report;
  Rational c(1);
  while (c <= c_star) {
    Rational worst(0);
    for (const auto& x : family) {
      RandomVariable clipped = x;
      for (std::size_t i = 0; i < x.size(); ++i)
        clipped[i] = rational_abs(x[i]) >= c ? rational_abs(x[i]) : Rational(0);
      worst = rational_max(worst, upper_expectation(model, clipped));
    }
    report.modulus.emplace_back(c, Enclosure::exact(worst));
    c *= 2;
  }
  report.modulus.emplace_back(c_star + 1, Enclosure::exact(Rational(0)));

  Verdict v = Verdict::pass();
  v.note("uniform_bound", c_star);
  v.note("modulus_zero_beyond", c_star);
  return {report, v};
}

std::pair<UIReport, Verdict> uniform_integrability_seq(const CredalModel& model,
                                                       const SequenceSpec& seq) {
  model.validate();
  seq.validate();
  if (seq.tabulated_only) fail_precondition("uniform integrability needs an analytic sequence");

  // Growth term charged on a non-polar atom: the modulus diverges.
  for (std::size_t k = 0; k < seq.terms.size(); ++k) {
    const auto& term = seq.terms[k];
    if (!term.rate.grows()) continue;
    for (auto i : model.non_polar_atoms()) {
      if (term.direction[i] == 0) continue;
      Witness w{"unbounded amplitude on a charged atom"};
      w.add("term", std::to_string(k));
      w.add("atom", model.space.atoms[i]);
      // Diverging subfamily: certified indices where |X_n(atom)| clears
      // growing cutoffs. The other terms are bounded by `slack`.
      Rational slack = rational_abs(seq.base[i]) + 1;
      for (const auto& other : seq.terms) {
        if (&other == &term) continue;
        const auto sup = other.rate.abs_sup_upper(make_rational(1, 1 << 20));
        slack += (sup ? *sup : Rational(1)) * rational_abs(other.direction[i]);
      }
      const Rational growth = -term.rate.param;  // exponent of n
      for (long c : {1L, 4L, 16L}) {
        Integer n = power_threshold_index(growth, (c + slack) / rational_abs(term.direction[i]));
        for (int widen = 0;
             widen < 64 &&
             eval_enclosure_at(seq, i, n, make_rational(1, 1 << 20)).abs().lo < c;
             ++widen)
          n *= 2;
        w.add("index_reaching_cutoff_" + std::to_string(c), n);
      }
      UIReport report;
      report.values_exact = false;
      return {report, Verdict::fail(std::move(w))};
    }
  }

  // Bounded amplitudes: a uniform bound over charged atoms.
  Rational bound(0);
  for (auto i : model.non_polar_atoms()) {
    Rational b = rational_abs(seq.base[i]);
    for (const auto& term : seq.terms) {
      const auto sup = term.rate.abs_sup_upper(make_rational(1, 1 << 20));
      if (sup) b += *sup * rational_abs(term.direction[i]);
    }
    for (const auto& pre : seq.prefix) b = rational_max(b, rational_abs(pre[i]));
    bound = rational_max(bound, b);
  }

  UIReport report;
  Rational c(1);
  while (c <= bound) {
    // sup_n E[|X_n| I(|X_n|>=c)] <= max_P sum over atoms with bound >= c.
    Rational worst(0);
    for (const auto& p : model.measures) {
      Rational s(0);
      for (auto i : model.non_polar_atoms()) {
        Rational bi = rational_abs(seq.base[i]);
        for (const auto& term : seq.terms) {
          const auto sup = term.rate.abs_sup_upper(make_rational(1, 1 << 20));
          if (sup) bi += *sup * rational_abs(term.direction[i]);
        }
        for (const auto& pre : seq.prefix) bi = rational_max(bi, rational_abs(pre[i]));
        if (bi >= c) s += p.weights[i] * bi;
      }
      worst = rational_max(worst, s);
    }
    report.modulus.emplace_back(c, Enclosure(Rational(0), worst));
    c *= 2;
  }
  report.modulus.emplace_back(bound + 1, Enclosure::exact(Rational(0)));
  report.values_exact = false;

  Verdict v = Verdict::pass();
  v.note("uniform_bound", bound);
  v.note("modulus_zero_beyond", bound);
  return {report, v};
}

Verdict monotone_convergence_check(const CredalModel& model, const SequenceSpec& seq,
                                   const RandomVariable& x_limit) {
  model.validate();
  seq.validate();
  if (seq.tabulated_only) fail_precondition("monotone check needs an analytic sequence");
  if (x_limit.size() != model.atom_count())
    fail_precondition("limit does not match the space");

  // Declared limit must be the pointwise limit on every atom.
  const LimitStatus st = limit_rv(seq);
  if (!st.exists_everywhere)
    fail_precondition("sequence has no pointwise limit on atom index " +
                      std::to_string(st.no_limit_atoms.front()));
  for (std::size_t i = 0; i < x_limit.size(); ++i)
    if (st.limit[i] != x_limit[i])
      fail_precondition("declared limit differs from the pointwise limit at atom \"" +
                        model.space.atoms[i] + "\"");

  // Sampled increments through the prefix junction.
  const long window = static_cast<long>(seq.prefix_length()) + 64;
  for (long n = 1; n < window; ++n) {
    const EvalResult a = eval_at(seq, Integer(n));
    const EvalResult b = eval_at(seq, Integer(n + 1));
    for (std::size_t i = 0; i < x_limit.size(); ++i) {
      if (a.exact && b.exact) {
        if (b.value[i] < a.value[i])
          fail_precondition("sequence decreases at n=" + std::to_string(n) + ", atom \"" +
                            model.space.atoms[i] + "\"");
      } else {
        const Rational tol = Rational(1) / rational_pow(Rational(10), 40);
        const Enclosure diff = eval_enclosure_at(seq, i, Integer(n + 1), tol) -
                               eval_enclosure_at(seq, i, Integer(n), tol);
        if (diff.hi < 0)
          fail_precondition("sequence decreases at n=" + std::to_string(n) + ", atom \"" +
                            model.space.atoms[i] + "\"");
        if (diff.lo < 0)
          fail_precondition("monotonicity undecided at n=" + std::to_string(n));
      }
    }
  }

  // Tail certification: each term's increments keep one sign.
  for (std::size_t k = 0; k < seq.terms.size(); ++k) {
    const auto& term = seq.terms[k];
    const bool zero_direction =
        std::all_of(term.direction.values.begin(), term.direction.values.end(),
                    [](const Rational& v) { return v == 0; });
    if (zero_direction || term.rate.family == RateFamily::Constant) {
      if (term.rate.family == RateFamily::Constant && term.rate.alternating &&
          term.rate.param != 0 && !zero_direction)
        fail_precondition("alternating term " + std::to_string(k) + " breaks monotonicity");
      continue;
    }
    if (term.rate.alternating)
      fail_precondition("alternating term " + std::to_string(k) + " breaks monotonicity");
    const bool increments_up = term.rate.grows();
    for (std::size_t i = 0; i < term.direction.size(); ++i) {
      const Rational& d = term.direction[i];
      const bool ok = increments_up ? d >= 0 : d <= 0;
      if (!ok)
        fail_precondition("term " + std::to_string(k) +
                          " gives mixed-sign increments at atom \"" + model.space.atoms[i] +
                          "\"; monotone tail undecided");
    }
  }

  // Conclusion: E[X_n] is nondecreasing and reaches E[X_limit].
  const Rational target = upper_expectation(model, x_limit);
  Verdict v = Verdict::pass();
  v.note("limit_expectation", target);
  Rational prev;
  bool have_prev = false;
  bool stabilized_exactly = false;
  for (long n : {1L, 2L, 3L, 5L, 9L, 17L, 33L, 65L}) {
    const EvalResult e = eval_at(seq, Integer(n));
    if (!e.exact) continue;
    const Rational en = upper_expectation(model, e.value);
    if (en > target)
      fail_precondition("E[X_n] exceeds the limit expectation at n=" + std::to_string(n));
    if (have_prev && en < prev) {
      Witness w{"expectation sequence not monotone"};
      w.add("n", std::to_string(n)).add("previous", prev).add("current", en);
      return Verdict::fail(std::move(w));
    }
    prev = en;
    have_prev = true;
    if (en == target) stabilized_exactly = true;
    v.note("expectation_at_" + std::to_string(n), en);
  }
  if (stabilized_exactly) {
    v.note("stabilized", "exact");
    return v;
  }

  // Certified residual decay: E[X] - E[X_n] <= max deviation over charged atoms.
  for (int j : {4, 8, 16}) {
    const Rational tol = Rational(1) / rational_pow(Rational(2), j);
    Integer worst(1);
    bool indexed = true;
    for (auto i : model.non_polar_atoms()) {
      const AtomTail tail = atom_tail(seq, i, Parity::Even, x_limit[i]);
      if (!tail.cluster.is_finite() || tail.cluster.value != 0)
        fail_precondition("deviation cluster nonzero despite pointwise limit");
      try {
        const Integer idx = decay_threshold_index(tail.remainder, tol);
        if (idx > worst) worst = idx;
      } catch (const Error& e) {
        if (e.kind() != Error::Kind::Overflow) throw;
        indexed = false;
      }
    }
    v.note("residual_le_2^-" + std::to_string(j) + "_from",
           indexed ? worst.get_str() : "beyond materialization guard");
  }
  return v;
}

}  // namespace subexp
