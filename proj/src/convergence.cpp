#include "subexp/convergence.hpp"

#include <algorithm>

#include "subexp/distribution.hpp"
#include "subexp/spaces.hpp"

namespace subexp {

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::QS: return "qs";
    case Mode::Capacity: return "capacity";
    case Mode::Lp: return "lp";
    case Mode::Distribution: return "distribution";
    case Mode::Complete: return "complete";
    case Mode::SLr: return "slr";
  }
  return "?";
}

std::vector<Rational> ModeParams::default_epsilon_grid() {
  std::vector<Rational> grid;
  for (int j = 0; j <= 16; ++j) grid.push_back(Rational(1) / rational_pow(Rational(2), j));
  return grid;
}

DeviationContext analyze_deviation(const CredalModel& model, const SequenceSpec& seq) {
  DeviationContext ctx;
  ctx.target = resolve_limit(model, seq);
  if (!ctx.target.ok) return ctx;
  ctx.clusters_all_zero = true;
  for (auto i : model.non_polar_atoms()) {
    DeviationContext::Atom atom;
    atom.index = i;
    atom.dev_even = atom_tail(seq, i, Parity::Even, ctx.target.limit[i]);
    atom.dev_odd = atom_tail(seq, i, Parity::Odd, ctx.target.limit[i]);
    atom.sign_even = tail_sign(atom.dev_even.remainder);
    atom.sign_odd = tail_sign(atom.dev_odd.remainder);
    for (const AtomTail* t : {&atom.dev_even, &atom.dev_odd}) {
      if (!t->cluster.is_finite()) {
        ctx.any_infinite = true;
        ctx.clusters_all_zero = false;
      } else if (t->cluster.value != 0) {
        ctx.clusters_all_zero = false;
        ctx.nonzero_cluster_magnitudes.push_back(rational_abs(t->cluster.value));
      }
    }
    ctx.charged.push_back(std::move(atom));
  }
  std::sort(ctx.nonzero_cluster_magnitudes.begin(), ctx.nonzero_cluster_magnitudes.end());
  ctx.nonzero_cluster_magnitudes.erase(
      std::unique(ctx.nonzero_cluster_magnitudes.begin(), ctx.nonzero_cluster_magnitudes.end()),
      ctx.nonzero_cluster_magnitudes.end());

  for (long n : {1L, 2L, 3L}) {
    const EvalResult ev = eval_at(seq, Integer(n));
    if (!ev.exact) continue;
    for (const auto& atom : ctx.charged) {
      const Rational d = rational_abs(ev.value[atom.index] - ctx.target.limit[atom.index]);
      if (d != 0) ctx.observed_deviation_magnitudes.push_back(d);
    }
  }
  std::sort(ctx.observed_deviation_magnitudes.begin(), ctx.observed_deviation_magnitudes.end());
  ctx.observed_deviation_magnitudes.erase(std::unique(ctx.observed_deviation_magnitudes.begin(),
                                                      ctx.observed_deviation_magnitudes.end()),
                                          ctx.observed_deviation_magnitudes.end());
  if (ctx.observed_deviation_magnitudes.size() > 12)
    ctx.observed_deviation_magnitudes.resize(12);
  return ctx;
}

namespace {

Witness no_limit_witness(const CredalModel& model, const ResolvedLimit& target) {
  Witness w("no pointwise limit on a charged atom");
  for (auto a : target.blocking_atoms) w.add("atom", model.space.atoms[a]);
  return w;
}

// Eventual membership of {|X_n - L| >= eps} along one parity.
bool eventually_in(const AtomTail& dev, const SignedTail& sig, const Rational& eps) {
  if (!dev.cluster.is_finite()) return true;
  const Rational mag = rational_abs(dev.cluster.value);
  if (mag > eps) return true;
  if (mag < eps) return false;
  // |cluster| == eps > 0; the remainder sign settles the boundary.
  if (dev.cluster.value > 0) return sig.sign >= 0;
  return sig.sign <= 0;
}

// Certified index from which the atom stays outside {|X_n - L| >= eps};
// nullopt when the index exceeds the materialization guard (the verdict is
// unaffected, only the reported index is).
std::optional<Integer> out_index(const AtomTail& dev, const SignedTail& sig,
                                 const Rational& eps) {
  try {
    const Rational mag = rational_abs(dev.cluster.value);
    if (mag < eps) {
      const Rational slack = (eps - mag) / 2;
      return decay_threshold_index(dev.remainder, slack);
    }
    // Boundary case: sign logic from sig.from, deviation within eps band.
    Integer idx = decay_threshold_index(dev.remainder, eps);
    return idx > sig.from ? idx : sig.from;
  } catch (const Error& e) {
    if (e.kind() == Error::Kind::Overflow) return std::nullopt;
    throw;
  }
}

// Exact deviation event at a sampled index (exact evaluations only).
std::optional<Rational> capacity_at(const CredalModel& model, const SequenceSpec& seq,
                                    const RandomVariable& limit, const Integer& n,
                                    const Rational& eps) {
  const EvalResult ev = eval_at(seq, n);
  if (!ev.exact) return std::nullopt;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < ev.value.size(); ++i)
    if (rational_abs(ev.value[i] - limit[i]) >= eps) members.push_back(i);
  return capacity(model, EventSet{std::move(members)});
}

std::vector<Rational> augmented_grid(const DeviationContext& ctx, const ModeParams& params) {
  std::vector<Rational> grid = params.epsilon_grid;
  for (const auto& m : ctx.nonzero_cluster_magnitudes) {
    grid.push_back(m);
    grid.push_back(m / 2);
  }
  for (const auto& m : ctx.observed_deviation_magnitudes) grid.push_back(m);
  std::sort(grid.begin(), grid.end(), std::greater<Rational>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Verdict numeric_only_tabulated(const CredalModel& model, const SequenceSpec& seq,
                               const ModeParams& params) {
  if (!seq.declared_limit)
    fail_precondition("tabulated sequence needs a declared limit");
  Integer n_checked(static_cast<long>(seq.prefix.size()));
  if (params.n_max < n_checked) n_checked = params.n_max;
  const EvalResult ev = eval_at(seq, n_checked);
  Rational residual(0);
  for (auto i : model.non_polar_atoms())
    residual = rational_max(residual, rational_abs(ev.value[i] - (*seq.declared_limit)[i]));
  Verdict v = Verdict::numeric_only(n_checked, residual);
  v.note("residual_threshold", "1/1000000000");
  v.note("conclusive", "no");
  return v;
}

Verdict qs_verdict(const CredalModel& model, const SequenceSpec& seq) {
  const ResolvedLimit target = resolve_limit(model, seq);
  const LimitStatus st = limit_rv(seq);
  std::vector<std::size_t> bad = st.no_limit_atoms;
  for (std::size_t i = 0; i < st.defined.size(); ++i)
    if (st.defined[i] && target.ok && st.limit[i] != target.limit[i]) bad.push_back(i);
  if (!target.ok) {
    for (auto a : target.blocking_atoms) bad.push_back(a);
  }
  EventSet bad_set{std::move(bad)};
  if (is_polar(model, bad_set)) {
    Verdict v = Verdict::pass();
    v.note("non_convergence_set_size", Integer(static_cast<long>(bad_set.members.size())));
    return v;
  }
  Witness w("non-convergence set is charged");
  for (auto a : bad_set.members)
    if (!model.atom_is_polar(a)) w.add("atom", model.space.atoms[a]);
  w.add("capacity", capacity(model, bad_set));
  return Verdict::fail(std::move(w));
}

Verdict capacity_verdict(const CredalModel& model, const SequenceSpec& seq,
                         const ModeParams& params) {
  const DeviationContext ctx = analyze_deviation(model, seq);
  if (!ctx.target.ok) return Verdict::fail(no_limit_witness(model, ctx.target));

  Verdict v = ctx.clusters_all_zero ? Verdict::pass() : Verdict{};
  bool failed = false;
  Witness w("capacity of the deviation event does not vanish");
  for (const auto& eps : augmented_grid(ctx, params)) {
    bool eps_holds = true;
    bool indexed = true;
    Integer stabilization(1);
    for (const auto& atom : ctx.charged) {
      const bool in_even = eventually_in(atom.dev_even, atom.sign_even, eps);
      const bool in_odd = eventually_in(atom.dev_odd, atom.sign_odd, eps);
      if (in_even || in_odd) {
        eps_holds = false;
        if (!failed) {
          w.add("epsilon", eps);
          w.add("atom", model.space.atoms[atom.index]);
          const LimitVal& c = in_even ? atom.dev_even.cluster : atom.dev_odd.cluster;
          w.add("cluster_deviation", c.is_finite() ? fraction_string(c.value)
                                                   : (c.inf > 0 ? "+inf" : "-inf"));
          failed = true;
        }
        break;
      }
      const auto even_idx = out_index(atom.dev_even, atom.sign_even, eps);
      const auto odd_idx = out_index(atom.dev_odd, atom.sign_odd, eps);
      if (!even_idx || !odd_idx) {
        indexed = false;
        continue;
      }
      if (*even_idx > stabilization) stabilization = *even_idx;
      if (*odd_idx > stabilization) stabilization = *odd_idx;
    }
    if (eps_holds)
      v.note("zero_from_eps_" + fraction_string(eps),
             indexed ? stabilization.get_str() : "beyond materialization guard");
  }

  if (failed) {
    if (ctx.clusters_all_zero)
      throw Error(Error::Kind::Internal, "capacity: grid failure despite zero clusters");
    return Verdict::fail(std::move(w));
  }
  if (!ctx.clusters_all_zero)
    throw Error(Error::Kind::Internal, "capacity: nonzero cluster escaped the grid");

  // Observed small-n stabilization for the coarsest grid epsilon.
  const Rational eps0 = params.epsilon_grid.front();
  for (long n : {1L, 2L, 4L, 8L}) {
    if (auto cap = capacity_at(model, seq, ctx.target.limit, Integer(n), eps0))
      v.note("V_at_n" + std::to_string(n), *cap);
  }
  return v;
}

Verdict lp_verdict(const CredalModel& model, const SequenceSpec& seq, const ModeParams& params) {
  const DeviationContext ctx = analyze_deviation(model, seq);
  if (!ctx.target.ok) return Verdict::fail(no_limit_witness(model, ctx.target));
  if (params.p < 1) fail_precondition("Lp mode requires p >= 1");

  Verdict v;
  if (ctx.clusters_all_zero) {
    v = Verdict::pass();
  } else {
    Witness w("p-th moment of the deviation does not vanish");
    for (const auto& atom : ctx.charged) {
      for (const AtomTail* t : {&atom.dev_even, &atom.dev_odd}) {
        if (t->cluster.is_finite() && t->cluster.value == 0) continue;
        w.add("atom", model.space.atoms[atom.index]);
        w.add("cluster_deviation", t->cluster.is_finite()
                                       ? fraction_string(t->cluster.value)
                                       : (t->cluster.inf > 0 ? "+inf" : "-inf"));
        break;
      }
    }
    v = Verdict::fail(std::move(w));
  }

  if (is_integer(params.p)) {
    const long pe = params.p.get_num().get_si();
    for (long n : {1L, 2L, 4L, 8L, 16L}) {
      const EvalResult ev = eval_at(seq, Integer(n));
      if (!ev.exact) continue;
      const Rational moment =
          upper_expectation(model, rv_abs_pow(ev.value - ctx.target.limit, pe));
      v.note("moment_at_n" + std::to_string(n), moment);
    }
  }
  return v;
}

Verdict complete_verdict(const CredalModel& model, const SequenceSpec& seq,
                         const ModeParams& params) {
  const DeviationContext ctx = analyze_deviation(model, seq);
  if (!ctx.target.ok) return Verdict::fail(no_limit_witness(model, ctx.target));

  for (const auto& eps : augmented_grid(ctx, params)) {
    for (const auto& atom : ctx.charged) {
      if (eventually_in(atom.dev_even, atom.sign_even, eps) ||
          eventually_in(atom.dev_odd, atom.sign_odd, eps)) {
        Witness w("deviation capacities are not summable");
        w.add("epsilon", eps);
        w.add("atom", model.space.atoms[atom.index]);
        w.add("atom_capacity", capacity(model, EventSet{{atom.index}}));
        return Verdict::fail(std::move(w));
      }
    }
  }
  if (!ctx.clusters_all_zero)
    throw Error(Error::Kind::Internal, "complete: nonzero cluster escaped the grid");

  Verdict v = Verdict::pass();
  // Partial sums stabilize once every charged atom leaves the event.
  const Rational eps0 = params.epsilon_grid.front();
  Rational partial(0);
  Integer n(1);
  int steps = 0;
  while (steps < 64) {
    const auto cap = capacity_at(model, seq, ctx.target.limit, n, eps0);
    if (!cap) break;
    partial += *cap;
    ++n;
    ++steps;
  }
  v.note("partial_sum_64_eps_" + fraction_string(eps0), partial);
  Integer stabilization(1);
  bool indexed = true;
  for (const auto& atom : ctx.charged) {
    for (const auto& idx : {out_index(atom.dev_even, atom.sign_even, eps0),
                           out_index(atom.dev_odd, atom.sign_odd, eps0)}) {
      if (!idx)
        indexed = false;
      else if (*idx > stabilization)
        stabilization = *idx;
    }
  }
  v.note("terms_zero_from", indexed ? stabilization.get_str() : "beyond materialization guard");
  return v;
}

Verdict slr_verdict(const CredalModel& model, const SequenceSpec& seq, const ModeParams& params) {
  const DeviationContext ctx = analyze_deviation(model, seq);
  if (!ctx.target.ok) return Verdict::fail(no_limit_witness(model, ctx.target));
  if (!(params.r > 0)) fail_precondition("s-Lr mode requires r > 0");

  if (!ctx.clusters_all_zero) {
    Witness w("deviation moments do not vanish, series diverges");
    for (const auto& atom : ctx.charged) {
      for (const AtomTail* t : {&atom.dev_even, &atom.dev_odd}) {
        if (t->cluster.is_finite() && t->cluster.value == 0) continue;
        w.add("atom", model.space.atoms[atom.index]);
        break;
      }
    }
    return Verdict::fail(std::move(w));
  }

  // sum_n E[|X_n - X|^r] converges iff the slowest remainder family over
  // charged atoms has a summable r-th power.
  for (const auto& atom : ctx.charged) {
    for (const AtomTail* t : {&atom.dev_even, &atom.dev_odd}) {
      if (t->remainder.empty()) continue;
      const DecayTerm& dom = t->remainder.front();
      bool summable = true;
      switch (dom.family) {
        case RateFamily::Power: summable = dom.param * params.r > 1; break;
        case RateFamily::Geometric: summable = true; break;
        case RateFamily::LogPow: summable = false; break;
        case RateFamily::Constant: summable = true; break;
      }
      if (!summable) {
        Witness w("series of deviation moments diverges");
        w.add("atom", model.space.atoms[atom.index]);
        w.add("dominant_family", family_name(dom.family));
        w.add("dominant_param", dom.param);
        w.add("r", params.r);
        return Verdict::fail(std::move(w));
      }
    }
  }

  Verdict v = Verdict::pass();
  if (is_integer(params.r)) {
    const long re = params.r.get_num().get_si();
    for (std::size_t k = 0; k < seq.terms.size(); ++k)
      v.note("term" + std::to_string(k) + "_abs_moment_r",
             upper_expectation(model, rv_abs_pow(seq.terms[k].direction, re)));
  }
  return v;
}

}  // namespace

Verdict check_convergence(const CredalModel& model, const SequenceSpec& seq,
                          const ModeParams& params) {
  model.validate();
  seq.validate();
  if (params.epsilon_grid.empty()) fail_precondition("epsilon grid must be nonempty");
  for (const auto& e : params.epsilon_grid)
    if (!(e > 0)) fail_precondition("epsilon grid values must be positive");
  if (params.n_max < 1) fail_precondition("n_max must be >= 1");
  if (seq.tabulated_only) return numeric_only_tabulated(model, seq, params);
  switch (params.mode) {
    case Mode::QS: return qs_verdict(model, seq);
    case Mode::Capacity: return capacity_verdict(model, seq, params);
    case Mode::Lp: return lp_verdict(model, seq, params);
    case Mode::Distribution: return distribution_convergence(model, seq);
    case Mode::Complete: return complete_verdict(model, seq, params);
    case Mode::SLr: return slr_verdict(model, seq, params);
  }
  fail_precondition("unknown mode");
}

bool ImplicationReport::any_violation() const {
  for (const auto& [name, violated] : arrows)
    if (violated) return true;
  return false;
}

ImplicationReport implication_audit(const CredalModel& model, const SequenceSpec& seq,
                                    const Rational& r, const Rational& p) {
  ModeParams params;
  params.r = r;
  params.p = p;
  ImplicationReport report;
  params.mode = Mode::QS;
  report.qs = check_convergence(model, seq, params);
  params.mode = Mode::Capacity;
  report.capacity = check_convergence(model, seq, params);
  params.mode = Mode::Lp;
  report.lp = check_convergence(model, seq, params);
  params.mode = Mode::Distribution;
  report.distribution = check_convergence(model, seq, params);
  params.mode = Mode::Complete;
  report.complete = check_convergence(model, seq, params);
  params.mode = Mode::SLr;
  report.slr = check_convergence(model, seq, params);

  auto arrow = [&](const std::string& name, const Verdict& from, const Verdict& to) {
    report.arrows.emplace_back(name, from.holds() && to.fails());
  };
  arrow("slr=>complete", report.slr, report.complete);
  arrow("complete=>qs", report.complete, report.qs);
  arrow("qs=>capacity", report.qs, report.capacity);
  arrow("capacity=>distribution", report.capacity, report.distribution);
  arrow("lp=>capacity", report.lp, report.capacity);
  return report;
}

Integer IndexMap::at(const Integer& k) const {
  if (k < 1) fail_precondition("probe position must be >= 1");
  if (squares) return k * k;
  return offset + stride * k;
}

std::vector<IndexMap> default_probes() {
  std::vector<IndexMap> probes;
  probes.push_back(IndexMap{"identity", Integer(0), Integer(1), false});
  probes.push_back(IndexMap{"evens", Integer(0), Integer(2), false});
  probes.push_back(IndexMap{"odds", Integer(-1), Integer(2), false});
  probes.push_back(IndexMap{"squares", Integer(0), Integer(1), true});
  return probes;
}

Verdict subsequence_principle(const CredalModel& model, const SequenceSpec& seq,
                              const std::vector<IndexMap>& probes) {
  if (probes.empty()) fail_precondition("subsequence principle needs probes");
  model.validate();
  seq.validate();
  if (seq.tabulated_only) {
    ModeParams params;
    return numeric_only_tabulated(model, seq, params);
  }
  ModeParams params;
  params.mode = Mode::Capacity;
  const Verdict cap = check_convergence(model, seq, params);

  if (cap.holds()) {
    // Quasi-sure convergence holds outright, so every probe already is a
    // quasi-surely convergent subsequence.
    Verdict v = Verdict::pass();
    for (const auto& probe : probes) v.note("probe_" + probe.name, "identity sub-subsequence");
    return v;
  }

  // Find a parity class with a persistent deviation on a charged atom.
  const DeviationContext ctx = analyze_deviation(model, seq);
  if (!ctx.target.ok) {
    // Oscillation without a limit: the even probe pins one cluster, and the
    // deviation between parity clusters is charged.
    Witness w("no sub-subsequence of a parity probe converges quasi-surely");
    w.add("probe", "evens");
    for (auto a : ctx.target.blocking_atoms) w.add("atom", model.space.atoms[a]);
    return Verdict::fail(std::move(w));
  }
  for (const auto& atom : ctx.charged) {
    const bool even_bad =
        !atom.dev_even.cluster.is_finite() || atom.dev_even.cluster.value != 0;
    const bool odd_bad = !atom.dev_odd.cluster.is_finite() || atom.dev_odd.cluster.value != 0;
    if (!even_bad && !odd_bad) continue;
    Witness w("no sub-subsequence of a parity probe converges quasi-surely");
    w.add("probe", even_bad ? "evens" : "odds");
    w.add("atom", model.space.atoms[atom.index]);
    const LimitVal& c = even_bad ? atom.dev_even.cluster : atom.dev_odd.cluster;
    w.add("cluster_deviation",
          c.is_finite() ? fraction_string(c.value) : (c.inf > 0 ? "+inf" : "-inf"));
    return Verdict::fail(std::move(w));
  }
  throw Error(Error::Kind::Internal, "capacity failed without a deviating atom");
}

Rational ContinuousFn::eval(const Rational& x) const {
  switch (kind) {
    case Kind::Identity: return x;
    case Kind::Affine: return a * x + b;
    case Kind::Square: return x * x;
    case Kind::Abs: return rational_abs(x);
    case Kind::PwLinear: return pw.eval(x);
  }
  return x;
}

Rational ContinuousFn::modulus_delta(const Rational& eps, const Rational& range_bound) const {
  switch (kind) {
    case Kind::Identity:
    case Kind::Abs:
      return eps;
    case Kind::Affine:
      return eps / (rational_abs(a) + 1);
    case Kind::Square:
      return eps / (2 * range_bound + 1);
    case Kind::PwLinear: {
      Rational steep(0);
      for (const auto& s : pw.seg) steep = rational_max(steep, rational_abs(s.first));
      return eps / (steep + 1);
    }
  }
  return eps;
}

std::string ContinuousFn::describe() const {
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::Affine: return fraction_string(a) + "*x+" + fraction_string(b);
    case Kind::Square: return "x^2";
    case Kind::Abs: return "|x|";
    case Kind::PwLinear: return pw.label;
  }
  return "?";
}

Verdict continuous_mapping_check(const CredalModel& model, const SequenceSpec& seq,
                                 const ContinuousFn& f, const ModeParams& params) {
  model.validate();
  seq.validate();
  if (seq.tabulated_only) return numeric_only_tabulated(model, seq, params);
  if (f.kind == ContinuousFn::Kind::PwLinear && !f.pw.continuous_everywhere())
    fail_precondition("continuous mapping needs a continuous function");

  ModeParams cap_params = params;
  cap_params.mode = Mode::Capacity;
  const Verdict cap = check_convergence(model, seq, cap_params);
  if (!cap.holds())
    fail_precondition("sequence does not converge in capacity; continuous mapping unavailable");

  const DeviationContext ctx = analyze_deviation(model, seq);

  // Range bound over charged atoms.
  Rational range(0);
  for (const auto& atom : ctx.charged) {
    Rational b = rational_abs(seq.base[atom.index]) + rational_abs(ctx.target.limit[atom.index]);
    for (const auto& term : seq.terms) {
      const auto sup = term.rate.abs_sup_upper(make_rational(1, 1 << 20));
      if (sup) b += *sup * rational_abs(term.direction[atom.index]);
    }
    for (const auto& pre : seq.prefix) b = rational_max(b, rational_abs(pre[atom.index]));
    range = rational_max(range, b);
  }

  Verdict v = Verdict::pass();
  v.note("function", f.describe());
  for (const auto& eps : params.epsilon_grid) {
    const Rational delta = f.modulus_delta(eps, range);
    Integer idx(1);
    bool indexed = true;
    for (const auto& atom : ctx.charged) {
      for (const AtomTail* t : {&atom.dev_even, &atom.dev_odd}) {
        try {
          const Integer i = decay_threshold_index(t->remainder, delta / 2);
          if (i > idx) idx = i;
        } catch (const Error& e) {
          if (e.kind() != Error::Kind::Overflow) throw;
          indexed = false;
        }
      }
    }
    v.note("image_zero_from_eps_" + fraction_string(eps),
           indexed ? idx.get_str() : "beyond materialization guard");

    // Observed exact image capacities at small n.
    if (eps == params.epsilon_grid.front()) {
      for (long n : {1L, 2L, 4L, 8L}) {
        const EvalResult ev = eval_at(seq, Integer(n));
        if (!ev.exact) continue;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < ev.value.size(); ++i)
          if (rational_abs(f.eval(ev.value[i]) - f.eval(ctx.target.limit[i])) >= eps)
            members.push_back(i);
        v.note("imageV_at_n" + std::to_string(n),
               capacity(model, EventSet{std::move(members)}));
      }
    }
  }
  return v;
}

MarkovResult markov_bound(const CredalModel& model, const RandomVariable& x,
                          const Rational& lam, const Rational& p) {
  model.validate();
  if (!(lam > 0)) fail_precondition("markov bound needs lambda > 0");
  if (p < 1) fail_precondition("markov bound needs p >= 1");

  MarkovResult result;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (rational_abs(x[i]) >= lam) members.push_back(i);
  result.lhs = capacity(model, EventSet{std::move(members)});

  if (is_integer(p)) {
    const long pe = p.get_num().get_si();
    const Rational moment = upper_expectation(model, rv_abs_pow(x, pe));
    const Rational rhs = moment / rational_pow(lam, pe);
    result.rhs_exact = rhs;
    result.rhs = Enclosure::exact(rhs);
    result.verdict = result.lhs <= rhs
                         ? Verdict::pass()
                         : Verdict::fail(Witness("markov inequality violated")
                                             .add("lhs", result.lhs)
                                             .add("rhs", rhs));
    return result;
  }

  // Rational non-integer p: certified enclosures, exact when representable.
  const Rational tol = Rational(1) / rational_pow(Rational(10), 30);
  bool exact = true;
  std::vector<Rational> powered(x.size(), Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Rational a = rational_abs(x[i]);
    if (a == 0) continue;
    const Enclosure e = enclose_rational_pow(a, p, tol);
    if (!e.is_exact()) exact = false;
    powered[i] = e.is_exact() ? e.lo : Rational(0);
  }
  const Enclosure lam_p = enclose_rational_pow(lam, p, tol);
  if (exact && lam_p.is_exact()) {
    const Rational moment = upper_expectation(model, RandomVariable(powered));
    const Rational rhs = moment / lam_p.lo;
    result.rhs_exact = rhs;
    result.rhs = Enclosure::exact(rhs);
    result.verdict = result.lhs <= rhs
                         ? Verdict::pass()
                         : Verdict::fail(Witness("markov inequality violated")
                                             .add("lhs", result.lhs)
                                             .add("rhs", rhs));
    return result;
  }

  Enclosure best = Enclosure::exact(Rational(0));
  bool first = true;
  for (std::size_t k = 0; k < model.measures.size(); ++k) {
    Enclosure sum = Enclosure::exact(Rational(0));
    const auto& w = model.measures[k].weights;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (w[i] == 0) continue;
      const Rational a = rational_abs(x[i]);
      const Enclosure e = a == 0 ? Enclosure::exact(Rational(0)) : enclose_rational_pow(a, p, tol);
      sum = sum + e.scaled(w[i]);
    }
    best = first ? sum : Enclosure(rational_max(best.lo, sum.lo), rational_max(best.hi, sum.hi));
    first = false;
  }
  result.rhs = Enclosure(best.lo / lam_p.hi, best.hi / lam_p.lo);
  result.verdict = result.lhs <= result.rhs.lo
                       ? Verdict::pass()
                       : Verdict::fail(Witness("markov inequality not certified")
                                           .add("lhs", result.lhs)
                                           .add("rhs_lower", result.rhs.lo));
  return result;
}

Verdict borel_cantelli_check(const CredalModel& model, const EventSchedule& schedule) {
  model.validate();
  for (const auto& e : schedule.prefix) e.validate(model.atom_count());
  schedule.tail.validate(model.atom_count());

  const Rational tail_capacity = capacity(model, schedule.tail);
  if (tail_capacity > 0)
    fail_precondition("capacity series diverges: the tail event has capacity " +
                      fraction_string(tail_capacity));

  Rational sum(0);
  for (const auto& e : schedule.prefix) sum += capacity(model, e);
  // Events beyond the prefix all equal the (polar) tail, so limsup A_n is
  // the tail itself.
  Verdict v = Verdict::pass();
  v.note("capacity_sum", sum);
  v.note("limsup_capacity", capacity(model, schedule.tail));
  return v;
}

DCTCertificate dct_certificate(const CredalModel& model, const SequenceSpec& seq,
                               const RandomVariable& dominator, const Rational& epsilon) {
  model.validate();
  seq.validate();
  if (!(epsilon > 0)) fail_precondition("dct needs epsilon > 0");
  if (dominator.size() != model.atom_count())
    fail_precondition("dominator does not match the space");
  if (seq.tabulated_only) fail_precondition("dct needs an analytic sequence");

  // Domination |X_n| <= Y on every atom and every n.
  const Rational enc_tol = Rational(1) / rational_pow(Rational(10), 20);
  for (std::size_t i = 0; i < model.atom_count(); ++i) {
    for (std::size_t k = 0; k < seq.prefix.size(); ++k) {
      if (rational_abs(seq.prefix[k][i]) > dominator[i])
        fail_precondition("domination violated at atom \"" + model.space.atoms[i] +
                          "\", n=" + std::to_string(k + 1));
    }
    // Tail analysis per parity.
    for (Parity par : {Parity::Even, Parity::Odd}) {
      const AtomTail t = atom_tail(seq, i, par, Rational(0));
      Integer check_from(static_cast<long>(seq.prefix.size()) + 1);
      Integer check_to(0);
      if (!t.cluster.is_finite()) {
        // The sequence escapes; find an explicit witness index.
        Integer n = check_from;
        for (int guard = 0; guard < 4096; ++guard) {
          const Enclosure xv = eval_enclosure_at(seq, i, n, enc_tol);
          if (xv.abs().lo > dominator[i])
            fail_precondition("domination violated at atom \"" + model.space.atoms[i] +
                              "\", n=" + n.get_str());
          n += 1;
        }
        fail_precondition("domination violated at atom \"" + model.space.atoms[i] +
                          "\" (sequence unbounded)");
      }
      const auto parity_witness = [&](Integer from) {
        if (from < check_from) from = check_from;
        if (parity_of(from) != par) from += 1;
        return from;
      };
      const Rational mag = rational_abs(t.cluster.value);
      if (mag > dominator[i]) {
        // Halved slack keeps |X_n| >= (|cluster| + Y)/2 > Y from the index on.
        const Integer from =
            decay_threshold_index(t.remainder, (mag - dominator[i]) / 2);
        const Integer n = parity_witness(from);
        fail_precondition("domination violated at atom \"" + model.space.atoms[i] +
                          "\", n=" + n.get_str());
      }
      if (mag == dominator[i]) {
        const SignedTail sig = tail_sign(t.remainder);
        const bool violates = dominator[i] == 0
                                  ? sig.sign != 0
                                  : (t.cluster.value > 0 ? sig.sign > 0 : sig.sign < 0);
        if (violates) {
          const Integer n = parity_witness(sig.from);
          fail_precondition("domination violated at atom \"" + model.space.atoms[i] +
                            "\", n=" + n.get_str());
        }
        check_to = sig.from;
        if (dominator[i] > 0) {
          const Integer band = decay_threshold_index(t.remainder, dominator[i]);
          if (band > check_to) check_to = band;
        }
      } else {
        check_to = decay_threshold_index(t.remainder, dominator[i] - mag);
      }
      // Explicit window before the analytic tail takes over.
      Integer n = check_from;
      const Integer cap = check_to < check_from + 4096 ? check_to : check_from + 4096;
      if (check_to > check_from + 4096)
        fail_precondition("domination verification window too large at atom \"" +
                          model.space.atoms[i] + "\"");
      while (n <= cap) {
        if (parity_of(n) == par) {
          Enclosure xv = eval_enclosure_at(seq, i, n, enc_tol);
          if (xv.abs().lo > dominator[i])
            fail_precondition("domination violated at atom \"" + model.space.atoms[i] +
                              "\", n=" + n.get_str());
          if (xv.abs().hi > dominator[i]) {
            xv = eval_enclosure_at(seq, i, n, Rational(1) / rational_pow(Rational(10), 60));
            if (xv.abs().lo > dominator[i])
              fail_precondition("domination violated at atom \"" + model.space.atoms[i] +
                                "\", n=" + n.get_str());
            if (xv.abs().hi > dominator[i])
              fail_precondition("domination undecided at atom \"" + model.space.atoms[i] +
                                "\", n=" + n.get_str());
          }
        }
        n += 1;
      }
    }
  }

  // Capacity convergence toward the resolved limit.
  ModeParams params;
  params.mode = Mode::Capacity;
  const Verdict cap = check_convergence(model, seq, params);
  if (!cap.holds())
    fail_precondition("sequence does not converge in capacity; dominated convergence unavailable");
  const DeviationContext ctx = analyze_deviation(model, seq);

  DCTCertificate cert;
  cert.epsilon = epsilon;

  // Cutoff beyond the dominator: both truncation tails are exactly zero.
  Rational y_max(0);
  for (auto i : model.non_polar_atoms()) y_max = rational_max(y_max, dominator[i]);
  cert.cutoff = y_max + 1;

  // Index threshold: E[I(|X_n - X| > eps/4)] < eps/(8c) via an empty event.
  Integer threshold(static_cast<long>(seq.prefix.size()) + 1);
  for (const auto& atom : ctx.charged) {
    for (const AtomTail* t : {&atom.dev_even, &atom.dev_odd}) {
      const Integer idx = decay_threshold_index(t->remainder, epsilon / 4);
      if (idx > threshold) threshold = idx;
    }
  }
  cert.n_threshold = threshold;

  // Analytic tail: E[|X_n - X|] <= sum of remainder bounds < eps beyond it.
  Integer tail_from = threshold;
  for (const auto& atom : ctx.charged) {
    for (const AtomTail* t : {&atom.dev_even, &atom.dev_odd}) {
      const Integer idx = decay_threshold_index(t->remainder, epsilon / 2);
      if (idx > tail_from) tail_from = idx;
    }
  }
  cert.analytic_tail_from = tail_from;

  // Sampled re-verification of the bound chain.
  std::vector<Integer> sample_ns = {threshold, threshold + 1, threshold + 7, threshold * 2,
                                    threshold * 4};
  std::sort(sample_ns.begin(), sample_ns.end());
  sample_ns.erase(std::unique(sample_ns.begin(), sample_ns.end()), sample_ns.end());
  for (const Integer& n : sample_ns) {
    DCTCertificate::Sample s;
    s.n = n;
    const EvalResult ev = eval_at(seq, n);
    s.exact = ev.exact;
    const RandomVariable& limit = ctx.target.limit;

    RandomVariable truncated = RandomVariable::constant(Rational(0), model.atom_count());
    RandomVariable tail_xn = truncated, tail_x = truncated, dev = truncated;
    for (std::size_t i = 0; i < model.atom_count(); ++i) {
      const Rational d = rational_abs(ev.value[i] - limit[i]);
      dev[i] = d;
      const bool below = rational_abs(ev.value[i]) <= cert.cutoff &&
                         rational_abs(limit[i]) <= cert.cutoff;
      truncated[i] = below ? d : Rational(0);
      tail_xn[i] = rational_abs(ev.value[i]) > cert.cutoff ? rational_abs(ev.value[i]) : Rational(0);
      tail_x[i] = rational_abs(limit[i]) > cert.cutoff ? rational_abs(limit[i]) : Rational(0);
    }
    s.truncation = upper_expectation(model, truncated);
    s.tail_xn = 2 * upper_expectation(model, tail_xn);
    s.tail_x = 2 * upper_expectation(model, tail_x);
    s.deviation_l1 = upper_expectation(model, dev);

    if (s.tail_xn != 0 || s.tail_x != 0)
      throw Error(Error::Kind::Internal, "dct: cutoff tails not exactly zero");
    if (ev.exact) {
      if (s.truncation + s.tail_xn + s.tail_x >= epsilon)
        throw Error(Error::Kind::Internal, "dct: bound chain exceeds epsilon at n=" + n.get_str());
      if (s.deviation_l1 > s.truncation + s.tail_xn + s.tail_x)
        throw Error(Error::Kind::Internal, "dct: chain does not dominate the deviation");
      if (s.deviation_l1 >= epsilon)
        throw Error(Error::Kind::Internal, "dct: deviation reaches epsilon at n=" + n.get_str());
    } else {
      // Certified upper bound on the deviation.
      Enclosure worst = Enclosure::exact(Rational(0));
      for (const auto& p : model.measures) {
        Enclosure sum = Enclosure::exact(Rational(0));
        for (std::size_t i = 0; i < model.atom_count(); ++i) {
          if (p.weights[i] == 0) continue;
          const Enclosure xv = eval_enclosure_at(seq, i, n, enc_tol);
          sum = sum + (xv - Enclosure::exact(limit[i])).abs().scaled(p.weights[i]);
        }
        worst = Enclosure(rational_max(worst.lo, sum.lo), rational_max(worst.hi, sum.hi));
      }
      if (worst.hi >= epsilon)
        throw Error(Error::Kind::Internal,
                    "dct: certified deviation bound reaches epsilon at n=" + n.get_str());
      s.deviation_l1 = worst.hi;
    }
    cert.samples.push_back(std::move(s));
  }

  cert.limit_membership = lb_membership(model, ctx.target.limit, Rational(1));
  cert.notes.emplace_back("uniform_integrability", "dominated by Y, tails zero beyond cutoff");
  cert.notes.emplace_back("tail_bound_form", "E[I(|Xn|>c)|Xn|] = 0 < eps/8");
  return cert;
}

}  // namespace subexp
