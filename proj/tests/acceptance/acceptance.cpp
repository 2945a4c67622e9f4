// Acceptance battery: every criterion prints one PASS/FAIL line; the binary
// exits nonzero if any criterion fails.

#include <chrono>
#include <iostream>
#include <random>
#include <vector>

#include "../oracle.hpp"
#include "subexp/axioms.hpp"
#include "subexp/convergence.hpp"
#include "subexp/distribution.hpp"
#include "subexp/fuzz.hpp"
#include "subexp/report.hpp"
#include "subexp/spaces.hpp"

using namespace subexp;

namespace {

int g_failed_criteria = 0;
int g_criterion_errors = 0;

#define REQUIRE_ACC(cond, what)                                             \
  do {                                                                      \
    if (!(cond)) {                                                          \
      ++g_criterion_errors;                                                 \
      if (g_criterion_errors <= 5)                                          \
        std::cout << "    [check failed] " << what << " at " << __FILE__    \
                  << ":" << __LINE__ << "\n";                               \
    }                                                                       \
  } while (0)

void finish_criterion(int number, const std::string& title, const std::string& detail) {
  if (g_criterion_errors == 0) {
    std::cout << "[PASS] criterion " << number << ": " << title << " (" << detail << ")\n";
  } else {
    std::cout << "[FAIL] criterion " << number << ": " << title << " (" << g_criterion_errors
              << " failed checks; " << detail << ")\n";
    ++g_failed_criteria;
  }
  g_criterion_errors = 0;
}

RandomVariable rv(std::initializer_list<Rational> vals) {
  return RandomVariable(std::vector<Rational>(vals));
}

CredalModel two_atom_deltas() {
  CredalModel m;
  m.space.atoms = {"a", "b"};
  m.measures = {Measure{"Pa", {Rational(1), Rational(0)}},
                Measure{"Pb", {Rational(0), Rational(1)}}};
  return m;
}

CredalModel three_atom() {
  CredalModel m;
  m.space.atoms = {"a", "b", "c"};
  m.measures = {Measure{"P1", {make_rational(1, 2), make_rational(1, 2), Rational(0)}},
                Measure{"P2", {Rational(0), make_rational(1, 2), make_rational(1, 2)}}};
  return m;
}

oracle::Weights weights_of(const CredalModel& m) {
  oracle::Weights w;
  for (const auto& p : m.measures) w.push_back(p.weights);
  return w;
}

// ---------------------------------------------------------------------------

void criterion1_axioms() {
  const auto start = std::chrono::steady_clock::now();
  const int seeds = 1000;
  for (int seed = 1; seed <= seeds; ++seed) {
    const Scenario s = generate_random_scenario(static_cast<std::uint64_t>(seed));
    std::vector<RandomVariable> samples;
    for (const auto& [name, x] : s.variables) samples.push_back(x);
    const Verdict v = verify_axioms(s.model, default_axiom_input(s.model, samples));
    REQUIRE_ACC(v.holds(), "axioms failed at seed " << seed);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  REQUIRE_ACC(secs < 60.0, "runtime budget exceeded: " << secs << "s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d scenarios in %.1fs", seeds, secs);
  finish_criterion(1, "axiom suite holds exactly on fuzzed scenarios", buf);
}

void criterion2_markov() {
  std::mt19937_64 rng(2024);
  auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % (hi - lo + 1)); };
  int triples = 0;
  for (int round = 0; round < 250; ++round) {
    const Scenario s = generate_random_scenario(5000 + static_cast<std::uint64_t>(round));
    const CredalModel& model = s.model;
    for (int k = 0; k < 40; ++k) {
      RandomVariable x;
      for (std::size_t i = 0; i < model.atom_count(); ++i)
        x.values.push_back(make_rational(draw(-9, 9), draw(1, 4)));
      const Rational lam = make_rational(draw(1, 8), draw(1, 4));
      const Rational p(draw(1, 3));
      const MarkovResult res = markov_bound(model, x, lam, p);
      REQUIRE_ACC(res.verdict.holds(), "markov violated");
      REQUIRE_ACC(res.rhs_exact.has_value(), "markov rhs not exact for integer p");
      REQUIRE_ACC(res.lhs <= *res.rhs_exact, "markov comparison broken");
      ++triples;
    }
  }
  finish_criterion(2, "Markov battery exact over fuzzed triples",
                   std::to_string(triples) + " triples, zero tolerance");
}

void criterion3_implications() {
  int families_seen[4] = {0, 0, 0, 0};
  int alternating_seen = 0;
  const int seeds = 1000;
  for (int seed = 1; seed <= seeds; ++seed) {
    const Scenario s = generate_random_scenario(static_cast<std::uint64_t>(seed));
    const SequenceSpec& seq = s.sequences.at("S");
    for (const auto& t : seq.terms) {
      families_seen[static_cast<int>(t.rate.family)]++;
      if (t.rate.alternating) ++alternating_seen;
    }
    const Rational r = (seed % 2) ? Rational(1) : Rational(2);
    const Rational p = (seed % 3 == 0) ? Rational(2) : Rational(1);
    const ImplicationReport rep = implication_audit(s.model, seq, r, p);
    REQUIRE_ACC(!rep.any_violation(), "arrow violated at seed " << seed);
  }
  for (int f = 0; f < 4; ++f)
    REQUIRE_ACC(families_seen[f] > 0, "rate family " << f << " never drawn");
  REQUIRE_ACC(alternating_seen > 0, "alternating wrapper never drawn");
  finish_criterion(3, "implication diagram never violated",
                   std::to_string(seeds) + " scenarios, r,p in {1,2}, all rate families");
}

void criterion4_dct() {
  int certificates = 0;
  for (int seed = 1; seed <= 150; ++seed) {
    const Scenario s = generate_dominated_scenario(static_cast<std::uint64_t>(seed));
    const SequenceSpec& seq = s.sequences.at("S");
    const RandomVariable& dominator = s.variables.at("Y");
    for (const char* eps_text : {"1/10", "1/1000"}) {
      const Rational eps = *parse_rational(eps_text);
      try {
        const DCTCertificate cert = dct_certificate(s.model, seq, dominator, eps);
        ++certificates;
        REQUIRE_ACC(!cert.samples.empty(), "certificate carries no samples");
        for (const auto& sample : cert.samples) {
          REQUIRE_ACC(sample.n >= cert.n_threshold, "sample below threshold");
          REQUIRE_ACC(sample.deviation_l1 < eps, "sampled deviation reaches epsilon");
          REQUIRE_ACC(sample.tail_xn == 0 && sample.tail_x == 0, "cutoff tails not zero");
          REQUIRE_ACC(sample.truncation + sample.tail_xn + sample.tail_x < eps,
                      "bound chain reaches epsilon");
          if (!sample.exact) continue;
          // Independent re-evaluation of the sampled deviation.
          const EvalResult ev = eval_at(seq, sample.n);
          std::vector<Rational> dev(s.model.atom_count());
          for (std::size_t i = 0; i < dev.size(); ++i)
            dev[i] = rational_abs(ev.value[i] - (*seq.declared_limit)[i]);
          REQUIRE_ACC(oracle::upper(weights_of(s.model), dev) == sample.deviation_l1,
                      "sample does not re-evaluate");
        }
        REQUIRE_ACC(cert.limit_membership.holds(), "limit not in L1_b");
        // Analytic tail: certified deviation bound at and past the tail index.
        const Integer doubled_tail = cert.analytic_tail_from * 2;
        for (const Integer& n : {cert.analytic_tail_from, doubled_tail}) {
          Enclosure worst = Enclosure::exact(Rational(0));
          for (const auto& measure : s.model.measures) {
            Enclosure sum = Enclosure::exact(Rational(0));
            for (std::size_t i = 0; i < s.model.atom_count(); ++i) {
              if (measure.weights[i] == 0) continue;
              const Enclosure xv =
                  eval_enclosure_at(seq, i, n, make_rational(1, 1 << 20));
              sum = sum + (xv - Enclosure::exact((*seq.declared_limit)[i]))
                              .abs()
                              .scaled(measure.weights[i]);
            }
            worst = Enclosure(rational_max(worst.lo, sum.lo), rational_max(worst.hi, sum.hi));
          }
          REQUIRE_ACC(worst.hi < eps, "analytic tail bound reaches epsilon at n=" << n.get_str());
        }
      } catch (const Error& e) {
        REQUIRE_ACC(false, "certificate refused at seed " << seed << ": " << e.what());
      }
    }
  }
  finish_criterion(4, "dominated convergence certificates re-verify exactly",
                   std::to_string(certificates) + " certificates, eps in {1/10, 1/1000}");
}

void criterion5_portmanteau() {
  int audited = 0;
  std::uint64_t seed = 0;
  while (audited < 500 && seed < 5000) {
    ++seed;
    const Scenario s = generate_random_scenario(seed);
    const SequenceSpec& seq = s.sequences.at("S");
    if (!seq.declared_limit) continue;
    ++audited;
    const PortmanteauAudit audit = portmanteau_audit(s.model, seq);
    REQUIRE_ACC(audit.all_agree, "claims disagree at seed " << seed);
    for (const auto& [name, violated] : audit.arrows)
      REQUIRE_ACC(!violated, "arrow " << name << " violated at seed " << seed);

    const Verdict df = df_convergence_audit(s.model, seq);
    REQUIRE_ACC(df.holds() == audit.claims[0].holds(), "df disagrees at seed " << seed);

    // Constant limits: agreement with the capacity checker.
    const auto charged = s.model.non_polar_atoms();
    bool constant = !charged.empty();
    for (auto i : charged)
      if ((*seq.declared_limit)[i] != (*seq.declared_limit)[charged.front()]) constant = false;
    if (constant) {
      const Rational c = (*seq.declared_limit)[charged.front()];
      const Verdict cl = constant_limit_check(s.model, seq, c);
      ModeParams params;
      params.mode = Mode::Capacity;
      const Verdict cap = check_convergence(s.model, seq, params);
      REQUIRE_ACC(cl.holds() == audit.claims[0].holds(),
                  "constant-limit disagrees with claim 1 at seed " << seed);
      REQUIRE_ACC(cl.holds() == cap.holds(),
                  "constant-limit disagrees with capacity at seed " << seed);
    }
  }
  REQUIRE_ACC(audited >= 500, "not enough declared-limit scenarios: " << audited);
  finish_criterion(5, "portmanteau all-or-nothing with df and constant-limit agreement",
                   std::to_string(audited) + " scenarios");
}

void criterion6_pairs() {
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const Scenario s = generate_random_scenario(seed);
    for (const auto& [name, x] : s.variables) {
      const Verdict v = pair_properties_check(s.model, x);
      REQUIRE_ACC(v.holds(), "pair properties failed at seed " << seed << " variable " << name);
    }
  }

  // Worked two-atom pair: upper jumps at 0, lower at 1.
  {
    const CredalModel deltas = two_atom_deltas();
    const auto pair = distribution_pair(deltas, rv({Rational(0), Rational(1)}));
    REQUIRE_ACC(pair.upper.value(Rational(0)) == 1, "two-atom upper at 0");
    REQUIRE_ACC(pair.upper.value(make_rational(-1, 100)) == 0, "two-atom upper before 0");
    REQUIRE_ACC(pair.lower.value(make_rational(99, 100)) == 0, "two-atom lower before 1");
    REQUIRE_ACC(pair.lower.value(Rational(1)) == 1, "two-atom lower at 1");
  }
  // Worked three-atom pair and oracle agreement on a probe grid.
  {
    const CredalModel three = three_atom();
    const RandomVariable x = rv({Rational(1), Rational(2), Rational(4)});
    const auto pair = distribution_pair(three, x);
    REQUIRE_ACC(pair.upper.value(Rational(1)) == make_rational(1, 2), "three-atom upper [1,2)");
    REQUIRE_ACC(pair.upper.value(Rational(2)) == 1, "three-atom upper [2,inf)");
    REQUIRE_ACC(pair.lower.value(Rational(2)) == make_rational(1, 2), "three-atom lower [2,4)");
    REQUIRE_ACC(pair.lower.value(Rational(4)) == 1, "three-atom lower [4,inf)");
    for (const Rational& probe : {Rational(0), Rational(1), Rational(2), Rational(3), Rational(4),
                                  Rational(5), make_rational(3, 2)}) {
      REQUIRE_ACC(pair.upper.value(probe) == oracle::cdf_upper(weights_of(three), x.values, probe),
                  "upper oracle mismatch");
      REQUIRE_ACC(pair.lower.value(probe) == oracle::cdf_lower(weights_of(three), x.values, probe),
                  "lower oracle mismatch");
    }
  }
  finish_criterion(6, "distribution-pair laws hold exactly",
                   "1000 fuzzed scenarios plus the worked pairs");
}

void criterion7_known_answers() {
  const CredalModel deltas = two_atom_deltas();
  const CredalModel three = three_atom();
  const oracle::Weights wd = weights_of(deltas);
  const oracle::Weights wt = weights_of(three);
  const RandomVariable x01 = rv({Rational(0), Rational(1)});
  const RandomVariable x124 = rv({Rational(1), Rational(2), Rational(4)});

  // Expectations and capacities.
  REQUIRE_ACC(oracle::upper(wd, x01.values) == 1, "oracle E upper two-atom");
  REQUIRE_ACC(upper_expectation(deltas, x01) == oracle::upper(wd, x01.values), "E upper");
  REQUIRE_ACC(lower_expectation(deltas, x01) == oracle::lower(wd, x01.values), "E lower");
  REQUIRE_ACC(oracle::upper(wt, x124.values) == 3, "oracle E upper three-atom");
  REQUIRE_ACC(upper_expectation(three, x124) == 3, "E upper three-atom");
  REQUIRE_ACC(lower_expectation(three, x124) == make_rational(3, 2), "E lower three-atom");
  REQUIRE_ACC(capacity(deltas, EventSet{{0}}) == oracle::cap(wd, {0}, 2), "capacity {a}");
  REQUIRE_ACC(capacity(three, EventSet{{1}}) == make_rational(1, 2), "capacity {b}");
  {
    CredalModel single;
    single.space.atoms = {"a", "b", "c"};
    single.measures = {Measure{"P", {make_rational(1, 2), make_rational(1, 2), Rational(0)}}};
    REQUIRE_ACC(is_polar(single, EventSet{{2}}), "polar singleton");
  }

  // Doctored functional and chain residuals.
  {
    const auto input = default_axiom_input(three, {x124});
    const ExpectationFn doctored = [&three](const RandomVariable& v) {
      return upper_expectation(three, v) + 1;
    };
    const Verdict v = verify_axioms(three, input, doctored);
    REQUIRE_ACC(v.fails() && v.witness->what == "constant preservation violated",
                "doctored witness");
    AxiomCheckInput chain_input = default_axiom_input(three, {});
    chain_input.chains.push_back({EventSet{{0, 1, 2}}, EventSet{{0, 1}}, EventSet{}});
    REQUIRE_ACC(verify_axioms(three, chain_input).holds(), "chain residuals");
  }

  // Seminorms and tails.
  REQUIRE_ACC(*lp_seminorm(deltas, x01, Rational(2)).power_exact == 1, "seminorm p=2");
  REQUIRE_ACC(*lp_seminorm(three, x124, Rational(1)).power_exact == 3, "seminorm p=1");
  {
    const Verdict v = lb_membership(three, x124, Rational(1));
    std::vector<std::pair<std::string, std::string>> expect = {
        {"tail_at_1", "3"}, {"tail_at_2", "2"}, {"tail_at_3", "2"}, {"tail_at_4", "0"}};
    for (const auto& e : expect) {
      bool found = false;
      for (const auto& note : v.notes)
        if (note == e) found = true;
      REQUIRE_ACC(found, "tail value " << e.first);
    }
  }

  // Uniform integrability failure for n * I({a}).
  {
    SequenceSpec growing;
    growing.base = RandomVariable::constant(Rational(0), 3);
    growing.terms.push_back({Rate{RateFamily::Power, Rational(-1), false},
                             rv({Rational(1), Rational(0), Rational(0)})});
    const auto [rep, v] = uniform_integrability_seq(three, growing);
    REQUIRE_ACC(v.fails(), "UI failure for growth");
    // Oracle: E[I(|X_n|>=c)|X_n|] = n V({a}) = n/2 along n = ceil(c)*k.
    for (long n : {2L, 4L, 8L}) {
      std::vector<Rational> xn = {Rational(n), Rational(0), Rational(0)};
      REQUIRE_ACC(oracle::upper(wt, xn) == make_rational(n, 2), "UI oracle modulus");
    }
  }

  // Monotone convergence: X_n = X - D/n with D >= 0.
  {
    const RandomVariable d = rv({Rational(1), Rational(0), Rational(2)});
    SequenceSpec up;
    up.base = x124;
    up.terms.push_back({Rate{RateFamily::Power, Rational(1), false}, -d});
    REQUIRE_ACC(monotone_convergence_check(three, up, x124).holds(), "monotone climb");
    Rational prev(-1000);
    for (long n = 1; n <= 16; ++n) {
      std::vector<Rational> xn(3);
      for (std::size_t i = 0; i < 3; ++i) xn[i] = x124[i] - d[i] / n;
      const Rational en = oracle::upper(wt, xn);
      REQUIRE_ACC(en >= prev, "oracle expectations nondecreasing");
      prev = en;
    }
    REQUIRE_ACC(prev <= 3, "oracle expectations below the limit");
  }

  // Sequence evaluation and limits.
  {
    const RandomVariable d = rv({Rational(1), Rational(-2), Rational(1)});
    SequenceSpec s;
    s.base = x124;
    s.terms.push_back({Rate{RateFamily::Power, Rational(1), false}, d});
    const auto expect =
        oracle::seq_value(x124.values, {make_rational(1, 2)}, {d.values});
    REQUIRE_ACC(eval_at(s, Integer(2)).value.values == expect, "eval at n=2");

    SequenceSpec g;
    g.base = x124;
    g.terms.push_back({Rate{RateFamily::Geometric, make_rational(1, 2), false}, d});
    const auto expect_g =
        oracle::seq_value(x124.values, {make_rational(1, 8)}, {d.values});
    REQUIRE_ACC(eval_at(g, Integer(3)).value.values == expect_g, "geometric eval at n=3");

    SequenceSpec osc;
    osc.base = x124;
    osc.terms.push_back({Rate{RateFamily::Constant, Rational(1), true},
                         rv({Rational(1), Rational(0), Rational(0)})});
    const LimitStatus st = limit_rv(osc);
    REQUIRE_ACC(st.no_limit_atoms == std::vector<std::size_t>{0}, "oscillation witness atoms");
  }

  // Series decisions.
  REQUIRE_ACC(!series_converges(Rate{RateFamily::Power, Rational(1), false}, Rational(1)),
              "harmonic diverges");
  REQUIRE_ACC(series_converges(Rate{RateFamily::Power, Rational(1), false}, Rational(2)),
              "p*s=2 converges");
  REQUIRE_ACC(series_converges(Rate{RateFamily::Geometric, make_rational(1, 2), false},
                               make_rational(1, 3)),
              "geometric converges");

  // Convergence modes with exact per-n moments.
  {
    const RandomVariable d = rv({Rational(1), Rational(-2), Rational(1)});
    SequenceSpec slow;
    slow.base = x124;
    slow.terms.push_back({Rate{RateFamily::Power, Rational(1), false}, d});
    ModeParams params;
    params.mode = Mode::SLr;
    params.r = Rational(1);
    REQUIRE_ACC(check_convergence(three, slow, params).fails(), "slr harmonic fails");
    SequenceSpec fast;
    fast.base = x124;
    fast.terms.push_back({Rate{RateFamily::Power, Rational(2), false}, d});
    REQUIRE_ACC(check_convergence(three, fast, params).holds(), "slr n^-2 holds");
    params.mode = Mode::Lp;
    params.p = Rational(1);
    REQUIRE_ACC(check_convergence(three, slow, params).holds(), "l1 holds");
    const Rational ed = oracle::upper(wt, rv_abs(d).values);
    for (long n : {1L, 2L, 4L}) {
      std::vector<Rational> dev(3);
      for (std::size_t i = 0; i < 3; ++i) dev[i] = rational_abs(d[i]) / n;
      REQUIRE_ACC(oracle::upper(wt, dev) == ed / n, "per-n moment oracle");
    }
  }

  // Markov worked examples.
  {
    const MarkovResult a = markov_bound(deltas, x01, make_rational(1, 2), Rational(1));
    REQUIRE_ACC(a.lhs == 1 && *a.rhs_exact == 2, "markov lhs=1 rhs=2");
    const MarkovResult b = markov_bound(deltas, x01, Rational(2), Rational(1));
    REQUIRE_ACC(b.lhs == 0 && *b.rhs_exact == make_rational(1, 2), "markov lhs=0 rhs=1/2");
  }

  // Borel-Cantelli with a polar tail.
  {
    CredalModel single;
    single.space.atoms = {"a", "b", "c"};
    single.measures = {Measure{"P", {make_rational(1, 2), make_rational(1, 2), Rational(0)}}};
    EventSchedule schedule;
    schedule.tail = EventSet{{2}};
    const Verdict v = borel_cantelli_check(single, schedule);
    REQUIRE_ACC(v.holds(), "polar tail holds");
    EventSchedule diverging;
    diverging.tail = EventSet{{0, 1, 2}};
    bool threw = false;
    try {
      borel_cantelli_check(single, diverging);
    } catch (const Error& e) {
      threw = e.kind() == Error::Kind::Precondition;
    }
    REQUIRE_ACC(threw, "omega schedule rejected");
  }

  // DCT certificate on the harmonic sequence, oracle-re-verified.
  {
    const RandomVariable d = rv({Rational(1), Rational(-2), Rational(1)});
    SequenceSpec slow;
    slow.base = x124;
    slow.terms.push_back({Rate{RateFamily::Power, Rational(1), false}, d});
    const RandomVariable dominator = rv_abs(x124) + rv_abs(d);
    const DCTCertificate cert = dct_certificate(three, slow, dominator, make_rational(1, 10));
    Rational y_max(0);
    for (auto i : three.non_polar_atoms()) y_max = rational_max(y_max, dominator[i]);
    REQUIRE_ACC(cert.cutoff == y_max + 1, "cutoff = max Y + 1");
    for (const auto& sample : cert.samples) {
      const auto ev = eval_at(slow, sample.n);
      std::vector<Rational> dev(3);
      for (std::size_t i = 0; i < 3; ++i) dev[i] = rational_abs(ev.value[i] - x124[i]);
      REQUIRE_ACC(oracle::upper(wt, dev) == sample.deviation_l1, "certificate sample oracle");
      REQUIRE_ACC(sample.deviation_l1 < make_rational(1, 10), "sample below epsilon");
    }
  }

  // Continuous mapping with the geometric rate.
  {
    SequenceSpec geo;
    geo.base = x124;
    geo.terms.push_back({Rate{RateFamily::Geometric, make_rational(1, 2), false},
                         rv({Rational(1), Rational(1), Rational(1)})});
    ContinuousFn affine;
    affine.kind = ContinuousFn::Kind::Affine;
    affine.a = 3;
    affine.b = -1;
    ModeParams params;
    REQUIRE_ACC(continuous_mapping_check(three, geo, affine, params).holds(), "affine mapping");
  }

  // Distribution capacities.
  REQUIRE_ACC(distribution_capacity(three, x124, RealSet::whole_line()) == 1, "C_X(R)=1");
  REQUIRE_ACC(distribution_capacity(three, x124, RealSet::point(Rational(2))) ==
                  make_rational(1, 2),
              "C_X({2})=1/2");
  REQUIRE_ACC(distribution_capacity(three, x124, RealSet::half_open(Rational(0), Rational(3))) == 1,
              "C_X((0,3])=1");
  REQUIRE_ACC(capacity_atoms(three, x124) ==
                  (std::vector<Rational>{Rational(1), Rational(2), Rational(4)}),
              "capacity atoms");
  {
    CredalModel single;
    single.space.atoms = {"a", "b", "c"};
    single.measures = {Measure{"P", {make_rational(1, 2), make_rational(1, 2), Rational(0)}}};
    const auto atoms = capacity_atoms(single, rv({Rational(1), Rational(2), Rational(9)}));
    REQUIRE_ACC(atoms == (std::vector<Rational>{Rational(1), Rational(2)}),
                "polar value excluded");
  }

  // Two-monotone witness arithmetic: 1 + 0 < 1 + 1.
  {
    const Verdict v = two_monotone_check(deltas, x01);
    REQUIRE_ACC(v.fails(), "two-monotone fails");
    REQUIRE_ACC(oracle::cap(wd, {0, 1}, 2) + Rational(0) <
                    oracle::cap(wd, {0}, 2) + oracle::cap(wd, {1}, 2),
                "two-monotone oracle inequality");
  }

  // Deterministic 1/n toward 0: excluded atom in the df audit.
  {
    CredalModel point;
    point.space.atoms = {"w"};
    point.measures = {Measure{"P", {Rational(1)}}};
    SequenceSpec shrink;
    shrink.base = RandomVariable::constant(Rational(0), 1);
    shrink.terms.push_back(
        {Rate{RateFamily::Power, Rational(1), false}, RandomVariable::constant(Rational(1), 1)});
    for (long n : {1L, 2L, 5L}) {
      std::vector<Rational> xn = {make_rational(1, n)};
      REQUIRE_ACC(oracle::cdf_upper({{Rational(1)}}, xn, Rational(0)) == 0, "F_n(0)=0");
    }
    const Verdict v = df_convergence_audit(point, shrink);
    REQUIRE_ACC(v.holds(), "df audit holds off the atom");
    bool excluded = false;
    for (const auto& [k, val] : v.notes)
      if (k.rfind("excluded_atom_x_", 0) == 0) excluded = true;
    REQUIRE_ACC(excluded, "atom exclusion reported");
  }

  // Constant limit chain vanishing exactly.
  {
    const Rational c(2);
    SequenceSpec drift;
    drift.base = RandomVariable::constant(c, 3);
    drift.terms.push_back({Rate{RateFamily::Power, Rational(1), false},
                           rv({Rational(1), Rational(-2), Rational(1)})});
    REQUIRE_ACC(constant_limit_check(three, drift, c).holds(), "constant limit holds");
    // Oracle: rhs = 1 - F_lower_n(c + eps/2) + F_upper_n(c - eps) at large n.
    const Rational eps = make_rational(1, 4);
    const long n = 64;  // beyond 2 max|D| / eps
    std::vector<Rational> xn(3);
    for (std::size_t i = 0; i < 3; ++i)
      xn[i] = c + rv({Rational(1), Rational(-2), Rational(1)})[i] / n;
    const Rational rhs = 1 - oracle::cdf_lower(wt, xn, c + eps / 2) +
                         oracle::cdf_upper(wt, xn, c - eps);
    REQUIRE_ACC(rhs == 0, "chain right side exactly zero");
  }

  finish_criterion(7, "known-answer set reproduced by the oracle and the library",
                   "every worked example cross-checked");
}

void criterion8_negative_controls() {
  const CredalModel three = three_atom();
  const CredalModel deltas = two_atom_deltas();
  const RandomVariable x124 = rv({Rational(1), Rational(2), Rational(4)});

  // Alternating constant fails qs, capacity, distribution with witnesses.
  SequenceSpec osc;
  osc.base = x124;
  osc.terms.push_back({Rate{RateFamily::Constant, Rational(1), true},
                       rv({Rational(1), Rational(0), Rational(0)})});
  ModeParams params;
  params.mode = Mode::QS;
  const Verdict qs = check_convergence(three, osc, params);
  REQUIRE_ACC(qs.fails() && qs.witness.has_value(), "qs fails with witness");
  bool atom_named = false;
  for (const auto& [k, v] : qs.witness->data)
    if (k == "atom" && v == "a") atom_named = true;
  REQUIRE_ACC(atom_named, "qs witness names the atom");
  params.mode = Mode::Capacity;
  const Verdict cap = check_convergence(three, osc, params);
  REQUIRE_ACC(cap.fails(), "capacity fails");
  params.mode = Mode::Distribution;
  const Verdict d = check_convergence(three, osc, params);
  REQUIRE_ACC(d.fails(), "distribution fails");

  // Two-monotone counterexample with the documented witness pair.
  const Verdict tm = two_monotone_check(deltas, rv({Rational(0), Rational(1)}));
  REQUIRE_ACC(tm.fails(), "two-monotone counterexample");
  bool saw0 = false, saw1 = false;
  for (const auto& [k, v] : tm.witness->data) {
    if (v == "{0}") saw0 = true;
    if (v == "{1}") saw1 = true;
  }
  REQUIRE_ACC(saw0 && saw1, "witness pair {0},{1}");

  // Non-dominated sequence trips the domination error.
  SequenceSpec growing;
  growing.base = RandomVariable::constant(Rational(0), 3);
  growing.terms.push_back({Rate{RateFamily::Power, Rational(-1), false},
                           rv({Rational(1), Rational(0), Rational(0)})});
  bool domination_error = false;
  try {
    dct_certificate(three, growing, rv_abs(x124), make_rational(1, 10));
  } catch (const Error& e) {
    domination_error = std::string(e.what()).find("domination violated") != std::string::npos;
  }
  REQUIRE_ACC(domination_error, "domination error raised");

  finish_criterion(8, "negative controls produce the documented witnesses",
                   "oscillation, 2-monotone pair, non-dominated sequence");
}

}  // namespace

int main() {
  std::cout << "acceptance battery, tool version " << kToolVersion << "\n";
  criterion1_axioms();
  criterion2_markov();
  criterion3_implications();
  criterion4_dct();
  criterion5_portmanteau();
  criterion6_pairs();
  criterion7_known_answers();
  criterion8_negative_controls();
  if (g_failed_criteria > 0) {
    std::cout << g_failed_criteria << " criteria FAILED\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
