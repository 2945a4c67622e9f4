#include "subexp/distribution.hpp"

#include "subexp/convergence.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "subexp/hull.hpp"

namespace subexp {

Rational distribution_capacity(const CredalModel& model, const RandomVariable& x,
                               const RealSet& a) {
  model.validate();
  if (x.size() != model.atom_count()) fail_precondition("variable does not match the space");
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (a.contains(x[i])) members.push_back(i);
  return capacity(model, EventSet{std::move(members)});
}

std::vector<Rational> capacity_atoms(const CredalModel& model, const RandomVariable& x) {
  std::set<Rational> out;
  for (auto i : model.non_polar_atoms()) out.insert(x[i]);
  return std::vector<Rational>(out.begin(), out.end());
}

namespace {

std::string set_string(const std::vector<Rational>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += fraction_string(values[i]);
  }
  return out + "}";
}

}  // namespace

Verdict two_monotone_check(const CredalModel& model, const RandomVariable& x) {
  model.validate();
  if (x.size() != model.atom_count()) fail_precondition("variable does not match the space");
  std::vector<Rational> values(x.values.begin(), x.values.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() > 10) fail_precondition("two-monotone audit limited to 10 distinct values");

  const auto table = model.capacity_table();
  std::vector<std::uint64_t> value_mask(values.size(), 0);
  for (std::size_t v = 0; v < values.size(); ++v)
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] == values[v]) value_mask[v] |= std::uint64_t{1} << i;

  const std::size_t full = std::size_t{1} << values.size();
  std::vector<std::uint64_t> atom_mask(full, 0);
  for (std::size_t s = 0; s < full; ++s)
    for (std::size_t v = 0; v < values.size(); ++v)
      if (s & (std::size_t{1} << v)) atom_mask[s] |= value_mask[v];

  auto cap_of = [&](std::size_t s) -> const Rational& { return table[atom_mask[s]]; };
  auto subset_values = [&](std::size_t s) {
    std::vector<Rational> out;
    for (std::size_t v = 0; v < values.size(); ++v)
      if (s & (std::size_t{1} << v)) out.push_back(values[v]);
    return out;
  };

  for (std::size_t a = 0; a < full; ++a) {
    for (std::size_t b = a; b < full; ++b) {
      const Rational lhs = cap_of(a | b) + cap_of(a & b);
      const Rational rhs = cap_of(a) + cap_of(b);
      if (lhs < rhs) {
        Witness w("2-monotonicity violated");
        w.add("A", set_string(subset_values(a)));
        w.add("B", set_string(subset_values(b)));
        w.add("C(AuB)+C(AnB)", lhs);
        w.add("C(A)+C(B)", rhs);
        return Verdict::fail(std::move(w));
      }
    }
  }
  // Consequence on disjoint unions.
  for (std::size_t a = 0; a < full; ++a) {
    for (std::size_t b = 0; b < full; ++b) {
      if (a & b) continue;
      if (cap_of(a | b) < cap_of(a) + cap_of(b))
        throw Error(Error::Kind::Internal, "superadditivity failed under 2-monotonicity");
    }
  }
  Verdict v = Verdict::pass();
  v.note("pairs_checked", Integer(static_cast<long>(full * full)));
  return v;
}

Verdict pair_properties_check(const CredalModel& model, const RandomVariable& x) {
  const DistributionPair pair = distribution_pair(model, x);

  std::set<Rational> probes;
  for (const auto& s : pair.upper.steps) probes.insert(s.first);
  for (const auto& s : pair.lower.steps) probes.insert(s.first);
  if (!probes.empty()) {
    std::vector<Rational> base(probes.begin(), probes.end());
    probes.insert(base.front() - 1);
    probes.insert(base.back() + 1);
    for (std::size_t i = 0; i + 1 < base.size(); ++i) probes.insert((base[i] + base[i + 1]) / 2);
  }

  for (const auto& p : probes) {
    const Rational hi = pair.upper.value(p);
    const Rational lo = pair.lower.value(p);
    if (!(0 <= lo && lo <= hi && hi <= 1)) {
      Witness w("distribution pair ordering violated");
      w.add("x", p).add("F_upper", hi).add("F_lower", lo);
      return Verdict::fail(std::move(w));
    }
  }

  for (const StepFunction* f : {&pair.upper, &pair.lower}) {
    Rational prev = f->initial;
    for (const auto& [sx, sv] : f->steps) {
      if (sv < prev) {
        Witness w("distribution function decreases");
        w.add("x", sx).add("value", sv);
        return Verdict::fail(std::move(w));
      }
      prev = sv;
    }
    if (f->initial != 0) {
      Witness w("limit at -infinity is not 0");
      return Verdict::fail(std::move(w));
    }
    const Rational final_value = f->steps.empty() ? f->initial : f->steps.back().second;
    if (final_value != 1) {
      Witness w("limit at +infinity is not 1");
      w.add("value", final_value);
      return Verdict::fail(std::move(w));
    }
  }

  // Points with zero upper mass are continuity points of both functions
  // (the jump of either is squeezed by E[I(X=x)]).
  Verdict v = Verdict::pass();
  for (const auto& p : probes) {
    Rational upper_mass(0), lower_mass(1);
    for (const auto& m : model.measures) {
      Rational mass(0);
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == p) mass += m.weights[i];
      upper_mass = rational_max(upper_mass, mass);
      lower_mass = rational_min(lower_mass, mass);
    }
    if (upper_mass == 0 && (pair.upper.has_jump_at(p) || pair.lower.has_jump_at(p))) {
      Witness w("distribution function jumps at a massless point");
      w.add("x", p).add("upper_mass", upper_mass);
      return Verdict::fail(std::move(w));
    }
    if (lower_mass == 0 && upper_mass != 0 && !pair.lower.has_jump_at(p))
      v.note("lower_continuous_at_" + fraction_string(p), "observed (lower mass 0)");
  }

  v.note("right_continuous", "step representation");
  return v;
}

namespace {

struct LawContext {
  RandomVariable target;
  bool target_was_base = false;
  struct Atom {
    std::size_t index;
    LimitVal cluster_even, cluster_odd;
    int sign_even = 0, sign_odd = 0;
  };
  std::vector<Atom> atoms;  // charged atoms only
  bool any_infinite = false;
  std::vector<Rational> grid;  // charged values of target/clusters/base/probes
  std::vector<Rational> mids;  // flanks + midpoints, disjoint from grid
};

LawContext build_law_context(const CredalModel& model, const SequenceSpec& seq) {
  LawContext ctx;
  if (seq.declared_limit) {
    ctx.target = *seq.declared_limit;
  } else {
    const ResolvedLimit res = resolve_limit(model, seq);
    if (res.ok) {
      ctx.target = res.limit;
    } else {
      ctx.target = seq.base;
      ctx.target_was_base = true;
    }
  }

  std::set<Rational> grid;
  for (auto i : model.non_polar_atoms()) {
    LawContext::Atom atom;
    atom.index = i;
    const AtomTail even = atom_tail(seq, i, Parity::Even, Rational(0));
    const AtomTail odd = atom_tail(seq, i, Parity::Odd, Rational(0));
    atom.cluster_even = even.cluster;
    atom.cluster_odd = odd.cluster;
    atom.sign_even = tail_sign(even.remainder).sign;
    atom.sign_odd = tail_sign(odd.remainder).sign;
    if (!even.cluster.is_finite() || !odd.cluster.is_finite()) ctx.any_infinite = true;
    if (even.cluster.is_finite()) grid.insert(even.cluster.value);
    if (odd.cluster.is_finite()) grid.insert(odd.cluster.value);
    grid.insert(ctx.target[i]);
    ctx.atoms.push_back(atom);
  }

  std::set<Rational> extras;
  for (auto i : model.non_polar_atoms()) extras.insert(seq.base[i]);
  for (long n : {1L, 2L, 3L}) {
    const EvalResult ev = eval_at(seq, Integer(n));
    if (!ev.exact) continue;
    for (auto i : model.non_polar_atoms()) extras.insert(ev.value[i]);
  }
  for (const auto& v : extras) {
    if (grid.size() >= 12) break;
    grid.insert(v);
  }
  ctx.grid.assign(grid.begin(), grid.end());

  if (!ctx.grid.empty()) {
    ctx.mids.push_back(ctx.grid.front() - 1);
    for (std::size_t i = 0; i + 1 < ctx.grid.size(); ++i)
      ctx.mids.push_back((ctx.grid[i] + ctx.grid[i + 1]) / 2);
    ctx.mids.push_back(ctx.grid.back() + 1);
  }
  return ctx;
}

// Exact limit of E[f(X_n)] through one parity class.
Rational eventual_upper(const CredalModel& model, const LawContext& ctx, const PwFn& f,
                        Parity parity) {
  RandomVariable values = RandomVariable::constant(Rational(0), model.atom_count());
  for (const auto& atom : ctx.atoms) {
    const LimitVal& c = parity == Parity::Even ? atom.cluster_even : atom.cluster_odd;
    const int s = parity == Parity::Even ? atom.sign_even : atom.sign_odd;
    values[atom.index] = f.eventual_value(c, s);
  }
  return upper_expectation(model, values);
}

Rational target_upper(const CredalModel& model, const LawContext& ctx, const PwFn& f) {
  RandomVariable values = RandomVariable::constant(Rational(0), model.atom_count());
  for (const auto& atom : ctx.atoms) values[atom.index] = f.eval(ctx.target[atom.index]);
  return upper_expectation(model, values);
}

struct Claim1Result {
  Verdict verdict;
  std::vector<PwFn> separators;
};

Claim1Result claim1_decide(const CredalModel& model, const LawContext& ctx) {
  Claim1Result out;
  if (ctx.any_infinite) {
    Witness w("sequence escapes to infinity on a charged atom");
    for (const auto& atom : ctx.atoms)
      if (!atom.cluster_even.is_finite() || !atom.cluster_odd.is_finite())
        w.add("atom", model.space.atoms[atom.index]);
    out.verdict = Verdict::fail(std::move(w));
    return out;
  }

  // Pushforward law vectors over the merged support.
  std::set<Rational> support_set;
  for (const auto& atom : ctx.atoms) {
    support_set.insert(atom.cluster_even.value);
    support_set.insert(atom.cluster_odd.value);
    support_set.insert(ctx.target[atom.index]);
  }
  std::vector<Rational> support(support_set.begin(), support_set.end());
  auto value_index = [&](const Rational& v) {
    return std::lower_bound(support.begin(), support.end(), v) - support.begin();
  };

  enum Var { kEven = 0, kOdd = 1, kTarget = 2 };
  auto laws_of = [&](Var which) {
    std::vector<std::vector<Rational>> laws;
    for (const auto& measure : model.measures) {
      std::vector<Rational> law(support.size(), Rational(0));
      for (const auto& atom : ctx.atoms) {
        const Rational& v = which == kEven ? atom.cluster_even.value
                           : which == kOdd ? atom.cluster_odd.value
                                           : ctx.target[atom.index];
        law[value_index(v)] += measure.weights[atom.index];
      }
      laws.push_back(std::move(law));
    }
    return laws;
  };
  const auto even_laws = laws_of(kEven);
  const auto odd_laws = laws_of(kOdd);
  const auto target_laws = laws_of(kTarget);

  auto check_pair = [&](const std::vector<std::vector<Rational>>& a,
                        const std::vector<std::vector<Rational>>& b,
                        const std::string& which) -> bool {
    for (const auto& point : a) {
      const HullResult r = point_in_hull(b, point);
      if (r.inside) continue;
      PwFn phi = pw_interpolant(support, r.separator, "separator(" + which + ")");
      out.separators.push_back(phi);
      if (out.verdict.holds()) {
        Witness w("law hulls differ: witness test function separates");
        w.add("direction", which);
        w.add("separating_function", phi.label);
        const Rational even_side = eventual_upper(model, ctx, phi, Parity::Even);
        const Rational odd_side = eventual_upper(model, ctx, phi, Parity::Odd);
        const Rational limit_side = target_upper(model, ctx, phi);
        w.add("lim_even_E[f(Xn)]", even_side);
        w.add("lim_odd_E[f(Xn)]", odd_side);
        w.add("E[f(X)]", limit_side);
        out.verdict = Verdict::fail(std::move(w));
      }
      return false;
    }
    return true;
  };

  bool ok = true;
  ok &= check_pair(even_laws, target_laws, "even law outside limit hull");
  ok &= check_pair(target_laws, even_laws, "limit law outside even hull");
  ok &= check_pair(odd_laws, target_laws, "odd law outside limit hull");
  ok &= check_pair(target_laws, odd_laws, "limit law outside odd hull");

  if (ok) {
    out.verdict = Verdict::pass();
    out.verdict.note("law_support_size", Integer(static_cast<long>(support.size())));
  }
  return out;
}

struct Families {
  std::vector<PwFn> continuous;
  std::vector<PwFn> qs_continuous;
  std::vector<RealSet> open_sets;
  std::vector<RealSet> closed_sets;
  std::vector<RealSet> continuity_sets;
  std::vector<PwFn> lsc;
  std::vector<PwFn> usc;
};

std::vector<PwFn> build_continuous_family(const LawContext& ctx,
                                          const std::vector<PwFn>& separators) {
  std::vector<PwFn> out;
  if (ctx.grid.empty()) return out;
  const Rational lo_flank = ctx.grid.front() - 1;
  const Rational hi_flank = ctx.grid.back() + 1;
  // Hats at grid values, a global bump, a clamp, and negations.
  for (std::size_t i = 0; i < ctx.grid.size(); ++i) {
    const Rational left = i == 0 ? lo_flank : ctx.mids[i];
    const Rational right = i + 1 < ctx.grid.size() ? ctx.mids[i + 1] : hi_flank;
    out.push_back(pw_hat(left, ctx.grid[i], right));
  }
  out.push_back(pw_bump(ctx.grid.front(), ctx.grid.back()));
  out.push_back(pw_clamp(lo_flank, hi_flank));
  for (const auto& s : separators) out.push_back(s);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(out[i].negated());
  return out;
}

Families build_families(const CredalModel& model, const LawContext& ctx,
                        const std::vector<PwFn>& separators) {
  Families fam;
  if (ctx.grid.empty()) return fam;
  const Rational lo_flank = ctx.grid.front() - 1;
  const Rational hi_flank = ctx.grid.back() + 1;
  fam.continuous = build_continuous_family(ctx, separators);

  // Open sets: intervals and rays over all endpoints, plus pairs of
  // elementary midpoint intervals.
  std::vector<Rational> endpoints = ctx.grid;
  endpoints.insert(endpoints.end(), ctx.mids.begin(), ctx.mids.end());
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    fam.open_sets.push_back(RealSet::open(std::nullopt, endpoints[i]));
    fam.open_sets.push_back(RealSet::open(endpoints[i], std::nullopt));
    for (std::size_t j = i + 1; j < endpoints.size(); ++j)
      fam.open_sets.push_back(RealSet::open(endpoints[i], endpoints[j]));
  }
  for (std::size_t i = 0; i + 1 < ctx.mids.size(); ++i) {
    for (std::size_t j = i + 2; j + 1 < ctx.mids.size(); ++j) {
      fam.open_sets.push_back(RealSet::open(ctx.mids[i], ctx.mids[i + 1])
                                  .union_with(RealSet::open(ctx.mids[j], ctx.mids[j + 1])));
    }
  }

  // Closed sets: complements of the open family plus singletons.
  for (const auto& a : fam.open_sets) fam.closed_sets.push_back(a.complement());
  for (const auto& g : ctx.grid) fam.closed_sets.push_back(RealSet::point(g));

  // Continuity sets: boundaries must carry zero limit capacity.
  std::vector<RealSet> candidates;
  for (std::size_t i = 0; i < ctx.mids.size(); ++i) {
    for (std::size_t j = i + 1; j < ctx.mids.size(); ++j) {
      candidates.push_back(RealSet::half_open(ctx.mids[i], ctx.mids[j]));
      candidates.push_back(RealSet::open(ctx.mids[i], ctx.mids[j]));
      candidates.push_back(RealSet::closed(ctx.mids[i], ctx.mids[j]));
    }
  }
  for (const auto& g : ctx.grid) candidates.push_back(RealSet::point(g));
  candidates.push_back(RealSet::closed(lo_flank, hi_flank));
  for (const auto& a : candidates) {
    bool zero_boundary = true;
    for (const auto& b : a.boundary_points())
      if (distribution_capacity(model, ctx.target, RealSet::point(b)) != 0) zero_boundary = false;
    if (zero_boundary) fam.continuity_sets.push_back(a);
  }

  // Quasi-surely continuous functions: continuous ones plus midpoint steps.
  fam.qs_continuous = fam.continuous;
  for (std::size_t i = 0; i + 1 < ctx.mids.size(); ++i) {
    const PwFn step = pw_indicator(RealSet::half_open(ctx.mids[i], ctx.mids[i + 1]),
                                   "step(" + fraction_string(ctx.mids[i]) + "," +
                                       fraction_string(ctx.mids[i + 1]) + "]");
    fam.qs_continuous.push_back(step);
    fam.qs_continuous.push_back(step.negated());
  }

  // Semicontinuous envelopes: open indicators are lsc, closed are usc;
  // continuous members belong to both.
  for (const auto& a : fam.open_sets) fam.lsc.push_back(pw_indicator(a, "i(open)"));
  for (const auto& a : fam.closed_sets) fam.usc.push_back(pw_indicator(a, "i(closed)"));
  // Sampled positive combinations stay lsc (dually usc).
  for (std::size_t i = 0; i + 5 < fam.open_sets.size(); i += 7) {
    fam.lsc.push_back(pw_add(pw_indicator(fam.open_sets[i], "i"),
                             pw_scale(pw_indicator(fam.open_sets[i + 5], "i"), Rational(2))));
  }
  for (std::size_t i = 0; i + 5 < fam.closed_sets.size(); i += 7) {
    fam.usc.push_back(pw_add(pw_indicator(fam.closed_sets[i], "i"),
                             pw_scale(pw_indicator(fam.closed_sets[i + 5], "i"), Rational(2))));
  }
  for (const auto& f : fam.continuous) {
    fam.lsc.push_back(f);
    fam.usc.push_back(f);
  }
  return fam;
}

struct ParityPair {
  Rational even, odd;
  Rational min() const { return rational_min(even, odd); }
  Rational max() const { return rational_max(even, odd); }
  bool equals(const Rational& v) const { return even == v && odd == v; }
};

ParityPair eventual_both(const CredalModel& model, const LawContext& ctx, const PwFn& f) {
  return ParityPair{eventual_upper(model, ctx, f, Parity::Even),
                    eventual_upper(model, ctx, f, Parity::Odd)};
}

}  // namespace

Verdict distribution_convergence(const CredalModel& model, const SequenceSpec& seq) {
  model.validate();
  seq.validate();
  if (seq.tabulated_only) fail_precondition("distributional decision needs an analytic sequence");
  const LawContext ctx = build_law_context(model, seq);
  Claim1Result claim1 = claim1_decide(model, ctx);

  // Library cross-check.
  const std::vector<PwFn> library = build_continuous_family(ctx, claim1.separators);
  bool library_ok = true;
  for (const auto& f : library) {
    const ParityPair lim = eventual_both(model, ctx, f);
    const Rational want = target_upper(model, ctx, f);
    if (!lim.equals(want)) {
      library_ok = false;
      break;
    }
  }
  if (claim1.verdict.holds() && !library_ok)
    throw Error(Error::Kind::Internal, "library contradicts the hull decision");
  if (claim1.verdict.holds())
    claim1.verdict.note("library_size", Integer(static_cast<long>(library.size())));
  if (ctx.target_was_base) claim1.verdict.note("target", "base (no declared or derived limit)");
  return claim1.verdict;
}

PortmanteauAudit portmanteau_audit(const CredalModel& model, const SequenceSpec& seq) {
  model.validate();
  seq.validate();
  if (seq.tabulated_only) fail_precondition("portmanteau audit needs an analytic sequence");
  const LawContext ctx = build_law_context(model, seq);
  Claim1Result claim1 = claim1_decide(model, ctx);
  const Families fam = build_families(model, ctx, claim1.separators);

  PortmanteauAudit audit;

  // Claim (1): distributional convergence plus the function library.
  Verdict c1 = claim1.verdict;
  if (c1.holds()) {
    for (const auto& f : fam.continuous) {
      const ParityPair lim = eventual_both(model, ctx, f);
      const Rational want = target_upper(model, ctx, f);
      if (!lim.equals(want))
        throw Error(Error::Kind::Internal, "library contradicts the hull decision");
    }
    c1.note("library_size", Integer(static_cast<long>(fam.continuous.size())));
  }
  audit.claims[0] = c1;

  // Claim (2): lsc liminf and usc limsup bounds.
  {
    Verdict v = Verdict::pass();
    for (const auto& f : fam.lsc) {
      const ParityPair lim = eventual_both(model, ctx, f);
      const Rational want = target_upper(model, ctx, f);
      if (lim.min() < want) {
        Witness w("lsc liminf bound violated");
        w.add("function", f.label).add("liminf", lim.min()).add("E[f(X)]", want);
        v = Verdict::fail(std::move(w));
        break;
      }
    }
    if (v.holds()) {
      for (const auto& g : fam.usc) {
        const ParityPair lim = eventual_both(model, ctx, g);
        const Rational want = target_upper(model, ctx, g);
        if (lim.max() > want) {
          Witness w("usc limsup bound violated");
          w.add("function", g.label).add("limsup", lim.max()).add("E[g(X)]", want);
          v = Verdict::fail(std::move(w));
          break;
        }
      }
    }
    audit.claims[1] = v;
  }

  // Claim (3): quasi-surely continuous functions converge.
  {
    Verdict v = Verdict::pass();
    for (const auto& f : fam.qs_continuous) {
      const ParityPair lim = eventual_both(model, ctx, f);
      const Rational want = target_upper(model, ctx, f);
      if (!lim.equals(want)) {
        Witness w("limit fails for a quasi-surely continuous function");
        w.add("function", f.label);
        w.add("lim_even", lim.even).add("lim_odd", lim.odd).add("E[f(X)]", want);
        v = Verdict::fail(std::move(w));
        break;
      }
    }
    audit.claims[2] = v;
  }

  // Claim (4): open sets.
  {
    Verdict v = Verdict::pass();
    for (const auto& a : fam.open_sets) {
      const PwFn ind = pw_indicator(a, "i(open)");
      const PwFn neg = ind.negated();
      const ParityPair lim = eventual_both(model, ctx, ind);
      const Rational want = target_upper(model, ctx, ind);
      const ParityPair nlim = eventual_both(model, ctx, neg);
      const Rational nwant = target_upper(model, ctx, neg);
      if (lim.min() < want || nlim.max() > nwant) {
        Witness w("open-set bound violated");
        w.add("liminf_E[I_A]", lim.min()).add("E[I_A(X)]", want);
        w.add("limsup_E[-I_A]", nlim.max()).add("E[-I_A(X)]", nwant);
        v = Verdict::fail(std::move(w));
        break;
      }
    }
    audit.claims[3] = v;
  }

  // Claim (5): closed sets.
  {
    Verdict v = Verdict::pass();
    for (const auto& a : fam.closed_sets) {
      const PwFn ind = pw_indicator(a, "i(closed)");
      const PwFn neg = ind.negated();
      const ParityPair lim = eventual_both(model, ctx, ind);
      const Rational want = target_upper(model, ctx, ind);
      const ParityPair nlim = eventual_both(model, ctx, neg);
      const Rational nwant = target_upper(model, ctx, neg);
      if (lim.max() > want || nlim.min() < nwant) {
        Witness w("closed-set bound violated");
        w.add("limsup_E[I_F]", lim.max()).add("E[I_F(X)]", want);
        w.add("liminf_E[-I_F]", nlim.min()).add("E[-I_F(X)]", nwant);
        v = Verdict::fail(std::move(w));
        break;
      }
    }
    audit.claims[4] = v;
  }

  // Claim (6): continuity sets converge on both sides.
  {
    Verdict v = Verdict::pass();
    for (const auto& a : fam.continuity_sets) {
      const PwFn ind = pw_indicator(a, "i(continuity)");
      const PwFn neg = ind.negated();
      const ParityPair lim = eventual_both(model, ctx, ind);
      const Rational want = target_upper(model, ctx, ind);
      const ParityPair nlim = eventual_both(model, ctx, neg);
      const Rational nwant = target_upper(model, ctx, neg);
      if (!lim.equals(want) || !nlim.equals(nwant)) {
        Witness w("continuity-set limit violated");
        w.add("lim_even_E[I_A]", lim.even).add("lim_odd_E[I_A]", lim.odd);
        w.add("E[I_A(X)]", want);
        v = Verdict::fail(std::move(w));
        break;
      }
    }
    audit.claims[5] = v;
  }

  const auto holds = [&](int i) { return audit.claims[static_cast<std::size_t>(i)].holds(); };
  audit.arrows = {
      {"(1)=>(2)", holds(0) && !holds(1)}, {"(2)=>(3)", holds(1) && !holds(2)},
      {"(3)=>(1)", holds(2) && !holds(0)}, {"(3)=>(4)", holds(2) && !holds(3)},
      {"(4)=>(5)", holds(3) && !holds(4)}, {"(5)=>(4)", holds(4) && !holds(3)},
      {"(5)=>(6)", holds(4) && !holds(5)}, {"(6)=>(1)", holds(5) && !holds(0)},
  };
  audit.all_agree = true;
  for (int i = 1; i < 6; ++i)
    if (holds(i) != holds(0)) audit.all_agree = false;
  audit.notes.emplace_back("grid_size", std::to_string(ctx.grid.size()));
  if (ctx.target_was_base) audit.notes.emplace_back("target", "base (no declared or derived limit)");
  return audit;
}

Verdict df_convergence_audit(const CredalModel& model, const SequenceSpec& seq) {
  model.validate();
  seq.validate();
  if (seq.tabulated_only) fail_precondition("df audit needs an analytic sequence");
  const LawContext ctx = build_law_context(model, seq);
  const DistributionPair pair = distribution_pair(model, ctx.target);

  Verdict v = Verdict::pass();
  std::vector<std::pair<std::string, std::string>> exclusions;

  // Pointwise convergence of the pair off the capacity atoms.
  std::vector<Rational> probes = ctx.mids;
  std::vector<Rational> atom_probes;
  for (const auto& g : ctx.grid) {
    if (distribution_capacity(model, ctx.target, RealSet::point(g)) == 0)
      probes.push_back(g);
    else
      atom_probes.push_back(g);
  }
  for (const auto& x : probes) {
    const PwFn ind = pw_indicator(RealSet::ray_le(x), "i(-inf," + fraction_string(x) + "]");
    const ParityPair up = eventual_both(model, ctx, ind);
    const PwFn neg = ind.negated();
    const Rational lo_even = -eventual_upper(model, ctx, neg, Parity::Even);
    const Rational lo_odd = -eventual_upper(model, ctx, neg, Parity::Odd);
    const Rational want_up = pair.upper.value(x);
    const Rational want_lo = pair.lower.value(x);
    if (!(up.even == want_up && up.odd == want_up && lo_even == want_lo && lo_odd == want_lo)) {
      Witness w("distribution function fails to converge at a massless point");
      w.add("x", x);
      w.add("lim_even_F_upper", up.even).add("lim_odd_F_upper", up.odd);
      w.add("F_upper", want_up);
      w.add("lim_even_F_lower", lo_even).add("lim_odd_F_lower", lo_odd);
      w.add("F_lower", want_lo);
      return Verdict::fail(std::move(w));
    }
  }
  for (const auto& x : atom_probes) {
    const PwFn ind = pw_indicator(RealSet::ray_le(x), "i");
    const ParityPair up = eventual_both(model, ctx, ind);
    const Rational want_up = pair.upper.value(x);
    if (!(up.even == want_up && up.odd == want_up))
      exclusions.emplace_back("excluded_atom_x_" + fraction_string(x),
                              "convergence fails at a capacity atom (excluded by hypothesis)");
  }

  // Half-open unions with massless endpoints.
  std::vector<RealSet> unions;
  for (std::size_t i = 0; i < ctx.mids.size(); ++i)
    for (std::size_t j = i + 1; j < ctx.mids.size(); ++j)
      unions.push_back(RealSet::half_open(ctx.mids[i], ctx.mids[j]));
  for (std::size_t i = 0; i + 1 < ctx.mids.size(); ++i)
    for (std::size_t j = i + 2; j + 1 < ctx.mids.size(); ++j)
      unions.push_back(RealSet::half_open(ctx.mids[i], ctx.mids[i + 1])
                           .union_with(RealSet::half_open(ctx.mids[j], ctx.mids[j + 1])));
  for (const auto& u : unions) {
    const PwFn ind = pw_indicator(u, "i(union)");
    const PwFn neg = ind.negated();
    const ParityPair lim = eventual_both(model, ctx, ind);
    const Rational want = target_upper(model, ctx, ind);
    const ParityPair nlim = eventual_both(model, ctx, neg);
    const Rational nwant = target_upper(model, ctx, neg);
    if (!lim.equals(want) || !nlim.equals(nwant)) {
      Witness w("half-open union criterion violated");
      w.add("lim_even", lim.even).add("lim_odd", lim.odd).add("E[I(X)]", want);
      return Verdict::fail(std::move(w));
    }
  }

  // Equivalence with convergence in distribution.
  const Verdict c1 = distribution_convergence(model, seq);
  if (!c1.holds()) {
    Witness w("interval criteria passed but distributional convergence fails");
    if (c1.witness) {
      for (const auto& [k, val] : c1.witness->data) w.add(k, val);
    }
    return Verdict::fail(std::move(w));
  }
  for (auto& e : exclusions) v.notes.push_back(std::move(e));
  v.note("probes", Integer(static_cast<long>(probes.size())));
  v.note("unions", Integer(static_cast<long>(unions.size())));
  return v;
}

Verdict constant_limit_check(const CredalModel& model, const SequenceSpec& seq,
                             const Rational& c) {
  model.validate();
  seq.validate();
  if (seq.tabulated_only) fail_precondition("constant-limit check needs an analytic sequence");

  if (seq.declared_limit) {
    for (auto i : model.non_polar_atoms())
      if ((*seq.declared_limit)[i] != c)
        fail_precondition("declared limit is not the constant " + fraction_string(c));
  } else {
    const ResolvedLimit res = resolve_limit(model, seq);
    if (!res.ok)
      fail_precondition("sequence has no limit; constant-limit check unavailable");
    for (auto i : model.non_polar_atoms())
      if (res.limit[i] != c)
        fail_precondition("declared limit is not the constant " + fraction_string(c));
  }

  SequenceSpec pinned = seq;
  pinned.declared_limit = RandomVariable::constant(c, model.atom_count());
  const LawContext ctx = build_law_context(model, pinned);
  const Verdict dconv = distribution_convergence(model, pinned);

  Verdict v = dconv.holds() ? Verdict::pass() : Verdict::fail(*dconv.witness);
  if (!dconv.holds()) return v;

  // Proof chain: E[I(|X_n - c| >= eps)] <= 1 - F_lower_n(c + eps/2) +
  // F_upper_n(c - eps) per n, with the right side vanishing.
  for (int j : {0, 2, 4, 8, 16}) {
    const Rational eps = Rational(1) / rational_pow(Rational(2), j);
    // Eventual right side through both parities.
    const PwFn low_ind = pw_indicator(RealSet::ray_le(c + eps / 2), "i");
    const PwFn up_ind = pw_indicator(RealSet::ray_le(c - eps), "i");
    for (Parity par : {Parity::Even, Parity::Odd}) {
      const Rational f_low = -eventual_upper(model, ctx, low_ind.negated(), par);
      const Rational f_up = eventual_upper(model, ctx, up_ind, par);
      const Rational rhs = 1 - f_low + f_up;
      if (rhs != 0) {
        Witness w("bounding chain does not vanish");
        w.add("epsilon", eps).add("eventual_rhs", rhs);
        return Verdict::fail(std::move(w));
      }
    }
    // Sampled exact chain inequality.
    for (long n : {1L, 2L, 4L, 8L, 16L, 32L}) {
      const EvalResult ev = eval_at(seq, Integer(n));
      if (!ev.exact) continue;
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < ev.value.size(); ++i)
        if (rational_abs(ev.value[i] - c) >= eps) members.push_back(i);
      const Rational lhs = capacity(model, EventSet{std::move(members)});
      Rational f_low(1), f_up(0);
      for (const auto& m : model.measures) {
        Rational mass_low(0), mass_up(0);
        for (std::size_t i = 0; i < ev.value.size(); ++i) {
          if (ev.value[i] <= c + eps / 2) mass_low += m.weights[i];
          if (ev.value[i] <= c - eps) mass_up += m.weights[i];
        }
        f_low = rational_min(f_low, mass_low);
        f_up = rational_max(f_up, mass_up);
      }
      const Rational rhs = 1 - f_low + f_up;
      if (lhs > rhs)
        throw Error(Error::Kind::Internal, "bounding chain inequality failed at n=" +
                                               std::to_string(n));
    }
    v.note("chain_vanishes_eps_" + fraction_string(eps), "both parities");
  }

  ModeParams params;
  params.mode = Mode::Capacity;
  const Verdict cap = check_convergence(model, pinned, params);
  if (cap.holds() != v.holds())
    throw Error(Error::Kind::Internal, "constant-limit and capacity verdicts disagree");
  v.note("capacity_cross_check", "agrees");
  return v;
}

}  // namespace subexp
