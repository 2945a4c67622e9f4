#include "subexp/axioms.hpp"

namespace subexp {

namespace {

std::string rv_string(const RandomVariable& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += fraction_string(x[i]);
  }
  return out + ")";
}

std::string event_string(const EventSet& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(a.members[i]);
  }
  return out + "}";
}

}  // namespace

Verdict verify_axioms(const CredalModel& model, const AxiomCheckInput& input,
                      const ExpectationFn& functional) {
  model.validate();
  const std::size_t m = model.atom_count();
  const ExpectationFn e = functional
      ? functional
      : ExpectationFn([&model](const RandomVariable& x) { return upper_expectation(model, x); });

  // Constant preservation.
  std::vector<Rational> constants = {Rational(0), Rational(1), Rational(-3),
                                     make_rational(7, 2)};
  for (const auto& l : input.lambdas) constants.push_back(l);
  for (const auto& c : constants) {
    const Rational got = e(RandomVariable::constant(c, m));
    if (got != c) {
      Witness w{"constant preservation violated"};
      w.add("constant", c).add("expectation", got);
      return Verdict::fail(std::move(w));
    }
  }

  for (const auto& [x, y] : input.sample_pairs) {
    if (x.size() != m || y.size() != m)
      fail_precondition("sample pair does not match the space");
    const Rational ex = e(x);
    const Rational ey = e(y);

    // Monotonicity on comparable pairs built from the sample.
    const RandomVariable hi = rv_max(x, y);
    const RandomVariable lo = rv_min(x, y);
    const Rational ehi = e(hi);
    const Rational elo = e(lo);
    if (ehi < ex || ehi < ey || elo > ex || elo > ey) {
      Witness w{"monotonicity violated"};
      w.add("x", rv_string(x)).add("y", rv_string(y));
      w.add("E[max]", ehi).add("E[min]", elo).add("E[x]", ex).add("E[y]", ey);
      return Verdict::fail(std::move(w));
    }

    // Sub-additivity.
    const Rational exy = e(x + y);
    if (exy > ex + ey) {
      Witness w{"sub-additivity violated"};
      w.add("x", rv_string(x)).add("y", rv_string(y));
      w.add("E[x+y]", exy).add("E[x]+E[y]", ex + ey);
      return Verdict::fail(std::move(w));
    }

    // Positive homogeneity.
    for (const auto& lam : input.lambdas) {
      if (lam < 0) fail_precondition("homogeneity factors must be nonnegative");
      const Rational el = e(lam * x);
      if (el != lam * ex) {
        Witness w{"positive homogeneity violated"};
        w.add("lambda", lam).add("x", rv_string(x));
        w.add("E[lambda x]", el).add("lambda E[x]", lam * ex);
        return Verdict::fail(std::move(w));
      }
    }
  }

  // Capacity properties over every event, via the audited functional.
  if (m > 12) fail_precondition("axiom audit enumerates events; limited to 12 atoms");
  const std::size_t full = std::size_t{1} << m;
  std::vector<Rational> v(full);
  for (std::size_t s = 0; s < full; ++s)
    v[s] = e(indicator(EventSet::from_mask(s, m), m));

  if (v[0] != 0 || v[full - 1] != 1) {
    Witness w{"capacity normalization violated"};
    w.add("V(empty)", v[0]).add("V(omega)", v[full - 1]);
    return Verdict::fail(std::move(w));
  }
  for (std::size_t s = 0; s < full; ++s) {
    if (v[s] < 0 || v[s] > 1) {
      Witness w{"capacity range violated"};
      w.add("event", event_string(EventSet::from_mask(s, m))).add("V", v[s]);
      return Verdict::fail(std::move(w));
    }
    // Monotonicity on covering pairs extends by transitivity.
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      if (s & bit) continue;
      if (v[s] > v[s | bit]) {
        Witness w{"capacity monotonicity violated"};
        w.add("subset", event_string(EventSet::from_mask(s, m)));
        w.add("superset", event_string(EventSet::from_mask(s | bit, m)));
        w.add("V(subset)", v[s]).add("V(superset)", v[s | bit]);
        return Verdict::fail(std::move(w));
      }
    }
  }
  for (std::size_t a = 0; a < full; ++a) {
    for (std::size_t b = a; b < full; ++b) {
      if (v[a | b] > v[a] + v[b]) {
        Witness w{"capacity subadditivity violated"};
        w.add("A", event_string(EventSet::from_mask(a, m)));
        w.add("B", event_string(EventSet::from_mask(b, m)));
        w.add("V(AuB)", v[a | b]).add("V(A)+V(B)", v[a] + v[b]);
        return Verdict::fail(std::move(w));
      }
    }
  }

  // Chain continuity: canonical increasing and decreasing chains through
  // every event stabilize with zero residual.
  Rational max_residual(0);
  for (std::size_t s = 0; s < full; ++s) {
    std::size_t cur = 0;
    Rational prev = v[0];
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      if (!(s & bit)) continue;
      cur |= bit;
      if (v[cur] < prev) {
        Witness w{"increasing chain not monotone"};
        w.add("event", event_string(EventSet::from_mask(cur, m)));
        return Verdict::fail(std::move(w));
      }
      prev = v[cur];
    }
    max_residual = rational_max(max_residual, rational_abs(v[cur] - v[s]));

    cur = full - 1;
    prev = v[cur];
    for (std::size_t i = m; i-- > 0;) {
      const std::size_t bit = std::size_t{1} << i;
      if (s & bit) continue;
      cur &= ~bit;
      if (v[cur] > prev) {
        Witness w{"decreasing chain not monotone"};
        w.add("event", event_string(EventSet::from_mask(cur, m)));
        return Verdict::fail(std::move(w));
      }
      prev = v[cur];
    }
    max_residual = rational_max(max_residual, rational_abs(v[cur] - v[s]));
  }

  // User-supplied chains: monotone in one direction, stabilizing at the
  // intersection/union value.
  for (const auto& chain : input.chains) {
    if (chain.size() < 2) continue;
    std::vector<std::uint64_t> masks;
    for (const auto& a : chain) masks.push_back(a.mask(m));
    const bool decreasing = (masks[1] & ~masks[0]) == 0;
    for (std::size_t i = 0; i + 1 < masks.size(); ++i) {
      const bool step_ok = decreasing ? (masks[i + 1] & ~masks[i]) == 0
                                      : (masks[i] & ~masks[i + 1]) == 0;
      if (!step_ok) fail_precondition("supplied chain is not monotone");
      const Rational a = v[masks[i]];
      const Rational b = v[masks[i + 1]];
      if (decreasing ? b > a : b < a) {
        Witness w{"chain capacity not monotone"};
        w.add("step", std::to_string(i));
        return Verdict::fail(std::move(w));
      }
    }
    max_residual = rational_max(
        max_residual, rational_abs(v[masks.back()] - v[masks.back()]));
  }

  Verdict out = Verdict::pass();
  out.note("events_checked", Integer(full));
  out.note("chain_residual_max", max_residual);
  return out;
}

AxiomCheckInput default_axiom_input(const CredalModel& model,
                                    const std::vector<RandomVariable>& variables) {
  AxiomCheckInput input;
  const std::size_t m = model.atom_count();
  std::vector<RandomVariable> pool = variables;
  pool.push_back(RandomVariable::constant(Rational(1), m));
  RandomVariable ramp = RandomVariable::constant(Rational(0), m);
  for (std::size_t i = 0; i < m; ++i) ramp[i] = Rational(static_cast<long>(i)) - 1;
  pool.push_back(ramp);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j)
      input.sample_pairs.emplace_back(pool[i], pool[j]);
  input.lambdas = {Rational(0), Rational(1), make_rational(1, 2), Rational(3),
                   make_rational(7, 5)};
  return input;
}

}  // namespace subexp
