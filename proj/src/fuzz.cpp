#include "subexp/fuzz.hpp"

#include <random>

namespace subexp {

namespace {

// mt19937_64 output is pinned by the standard; bounded draws avoid the
// implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1)));
  }
  Rational rational(long max_num, long max_den) {
    const long den = range(1, max_den);
    const long num = range(-max_num, max_num);
    return make_rational(num, den);
  }

 private:
  std::mt19937_64 engine_;
};

Measure random_measure(Rng& rng, std::size_t atoms, const std::vector<bool>& polar,
                       std::size_t index) {
  Measure m;
  m.name = "P" + std::to_string(index);
  std::vector<long> numerators(atoms, 0);
  long sum = 0;
  for (std::size_t i = 0; i < atoms; ++i) {
    if (polar[i]) continue;
    numerators[i] = rng.range(0, 6);
    sum += numerators[i];
  }
  if (sum == 0) {
    for (std::size_t i = 0; i < atoms; ++i)
      if (!polar[i]) {
        numerators[i] = 1;
        sum = 1;
        break;
      }
  }
  for (std::size_t i = 0; i < atoms; ++i) m.weights.push_back(make_rational(numerators[i], sum));
  return m;
}

Rate random_rate(Rng& rng) {
  Rate rate;
  switch (rng.below(4)) {
    case 0: {
      rate.family = RateFamily::Power;
      const Rational choices[] = {make_rational(1, 2), Rational(1), Rational(2), Rational(3)};
      rate.param = choices[rng.below(4)];
      break;
    }
    case 1: {
      rate.family = RateFamily::Geometric;
      const Rational choices[] = {make_rational(1, 2), make_rational(1, 3), make_rational(3, 4)};
      rate.param = choices[rng.below(3)];
      break;
    }
    case 2: {
      rate.family = RateFamily::LogPow;
      const Rational choices[] = {Rational(1), Rational(2)};
      rate.param = choices[rng.below(2)];
      break;
    }
    default: {
      rate.family = RateFamily::Constant;
      const Rational choices[] = {Rational(0), Rational(1), make_rational(1, 2),
                                  make_rational(-1, 3)};
      rate.param = choices[rng.below(4)];
      break;
    }
  }
  rate.alternating = rng.chance(1, 4);
  return rate;
}

void build_model(Rng& rng, const FuzzBounds& bounds, Scenario& scenario) {
  const std::size_t atoms = 1 + rng.below(bounds.max_atoms);
  for (std::size_t i = 0; i < atoms; ++i)
    scenario.model.space.atoms.push_back("w" + std::to_string(i));

  std::vector<bool> polar(atoms, false);
  if (atoms >= 2 && rng.chance(1, 4)) polar[rng.below(atoms)] = true;

  const std::size_t measures = 1 + rng.below(bounds.max_measures);
  for (std::size_t k = 0; k < measures; ++k)
    scenario.model.measures.push_back(random_measure(rng, atoms, polar, k));
  scenario.model.validate();
}

RandomVariable random_variable(Rng& rng, std::size_t atoms) {
  RandomVariable x;
  for (std::size_t i = 0; i < atoms; ++i) x.values.push_back(rng.rational(8, 4));
  return x;
}

void default_checks(Scenario& scenario, Rng& rng) {
  const Rational p = rng.chance(1, 2) ? Rational(1) : Rational(2);
  const Rational r = rng.chance(1, 2) ? Rational(1) : Rational(2);
  CheckSpec ax;
  ax.type = "axioms";
  scenario.checks.push_back(ax);
  CheckSpec eval;
  eval.type = "eval";
  eval.variable = "X";
  scenario.checks.push_back(eval);
  CheckSpec markov;
  markov.type = "markov";
  markov.variable = "X";
  markov.lambda = make_rational(1 + static_cast<long>(rng.below(4)), 2);
  markov.p = p;
  scenario.checks.push_back(markov);
  CheckSpec lb;
  lb.type = "lb-membership";
  lb.variable = "X";
  lb.p = p;
  scenario.checks.push_back(lb);
  for (const char* t : {"two-monotone", "pair-properties"}) {
    CheckSpec c;
    c.type = t;
    c.variable = "X";
    scenario.checks.push_back(c);
  }
  CheckSpec imp;
  imp.type = "implication";
  imp.sequence = "S";
  imp.p = p;
  imp.r = r;
  scenario.checks.push_back(imp);
  CheckSpec port;
  port.type = "portmanteau";
  port.sequence = "S";
  scenario.checks.push_back(port);
  CheckSpec df;
  df.type = "df-convergence";
  df.sequence = "S";
  scenario.checks.push_back(df);
  CheckSpec sub;
  sub.type = "subsequence";
  sub.sequence = "S";
  scenario.checks.push_back(sub);
  CheckSpec ui;
  ui.type = "uniform-integrability";
  ui.sequence = "S";
  scenario.checks.push_back(ui);
}

}  // namespace

Scenario generate_random_scenario(std::uint64_t seed, const FuzzBounds& bounds) {
  if (bounds.max_atoms == 0 || bounds.max_measures == 0 || bounds.max_terms == 0)
    fail_precondition("fuzz bounds must be positive");
  Rng rng(seed);
  Scenario scenario;
  scenario.name = "fuzz-" + std::to_string(seed);
  build_model(rng, bounds, scenario);
  const std::size_t atoms = scenario.model.atom_count();

  scenario.variables["X"] = random_variable(rng, atoms);
  const std::size_t terms = 1 + rng.below(bounds.max_terms);
  for (std::size_t k = 0; k < terms; ++k)
    scenario.variables["D" + std::to_string(k)] = random_variable(rng, atoms);

  SequenceSpec seq;
  seq.base = scenario.variables.at("X");
  for (std::size_t k = 0; k < terms; ++k)
    seq.terms.push_back({random_rate(rng), scenario.variables.at("D" + std::to_string(k))});
  if (rng.chance(1, 4)) {
    const std::size_t n0 = 1 + rng.below(3);
    for (std::size_t i = 0; i < n0; ++i) seq.prefix.push_back(random_variable(rng, atoms));
  }
  // Declare the derived limit when it exists (filled on polar atoms); with
  // small probability declare a perturbed or fallback target so the failing
  // verdict paths get exercised too.
  const ResolvedLimit res = resolve_limit(scenario.model, seq);
  bool exact_limit_declared = false;
  if (res.ok) {
    if (rng.chance(1, 8)) {
      RandomVariable off = res.limit;
      off[rng.below(atoms)] += Rational(1 + static_cast<long>(rng.below(3)));
      scenario.variables["L"] = off;
      seq.declared_limit = off;
    } else if (rng.chance(6, 7)) {
      scenario.variables["L"] = res.limit;
      seq.declared_limit = res.limit;
      exact_limit_declared = true;
    }
  } else if (rng.chance(1, 2)) {
    scenario.variables["L"] = seq.base;
    seq.declared_limit = seq.base;
  }
  seq.validate();
  scenario.sequences["S"] = std::move(seq);

  if (exact_limit_declared || (res.ok && !scenario.sequences.at("S").declared_limit)) {
    CheckSpec cm;
    cm.type = "continuous-mapping";
    cm.sequence = "S";
    ContinuousFn f;
    switch (rng.below(3)) {
      case 0: f.kind = ContinuousFn::Kind::Abs; break;
      case 1:
        f.kind = ContinuousFn::Kind::Affine;
        f.a = make_rational(rng.range(-5, 5), 1 + static_cast<long>(rng.below(3)));
        f.b = Rational(rng.range(-3, 3));
        break;
      default: f.kind = ContinuousFn::Kind::Square; break;
    }
    cm.function = f;
    scenario.checks.push_back(cm);
  }

  // Constant-limit check when the effective target is a charged-atom constant.
  default_checks(scenario, rng);
  const SequenceSpec& stored = scenario.sequences.at("S");
  const RandomVariable* target = nullptr;
  if (stored.declared_limit)
    target = &*stored.declared_limit;
  else if (res.ok)
    target = &res.limit;
  if (target) {
    const auto charged = scenario.model.non_polar_atoms();
    bool constant = !charged.empty();
    for (auto i : charged)
      if ((*target)[i] != (*target)[charged.front()]) constant = false;
    if (constant) {
      CheckSpec c;
      c.type = "constant-limit";
      c.sequence = "S";
      c.constant = (*target)[charged.front()];
      scenario.checks.push_back(c);
    }
  }
  return scenario;
}

Scenario generate_dominated_scenario(std::uint64_t seed, const FuzzBounds& bounds) {
  Rng rng(seed);
  Scenario scenario;
  scenario.name = "dct-fuzz-" + std::to_string(seed);
  build_model(rng, bounds, scenario);
  const std::size_t atoms = scenario.model.atom_count();

  scenario.variables["X"] = random_variable(rng, atoms);
  const std::size_t terms = 1 + rng.below(bounds.max_terms);
  SequenceSpec seq;
  seq.base = scenario.variables.at("X");
  for (std::size_t k = 0; k < terms; ++k) {
    Rate rate = random_rate(rng);
    // Capacity convergence to the base: drop nonvanishing constants.
    if (rate.family == RateFamily::Constant) rate.param = 0;
    scenario.variables["D" + std::to_string(k)] = random_variable(rng, atoms);
    seq.terms.push_back({rate, scenario.variables.at("D" + std::to_string(k))});
  }
  seq.declared_limit = seq.base;
  scenario.variables["L"] = seq.base;

  // Dominator |X| + sum_k sup|a^k| |D_k| covers every index.
  RandomVariable dominator = rv_abs(seq.base);
  for (const auto& term : seq.terms) {
    const auto sup = term.rate.abs_sup_upper(make_rational(1, 1 << 20));
    Rational bound = sup ? *sup : Rational(1);
    if (bound.get_den() > 1000)
      bound = Rational(ceil_to_integer(bound * 1024), Integer(1024));
    dominator = dominator + bound * rv_abs(term.direction);
  }
  scenario.variables["Y"] = dominator;
  seq.validate();
  scenario.sequences["S"] = std::move(seq);

  for (const char* eps : {"1/10", "1/1000"}) {
    CheckSpec c;
    c.type = "certify-dct";
    c.sequence = "S";
    c.dominator = "Y";
    c.epsilon = *parse_rational(eps);
    scenario.checks.push_back(c);
  }
  return scenario;
}

}  // namespace subexp
