#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "subexp/decay.hpp"
#include "subexp/sequence.hpp"

using namespace subexp;
using fixtures::rv;

namespace {

SequenceSpec power_seq(const RandomVariable& base, const RandomVariable& dir, const Rational& p,
                       bool alternating = false) {
  SequenceSpec s;
  s.base = base;
  s.terms.push_back({Rate{RateFamily::Power, p, alternating}, dir});
  return s;
}

}  // namespace

TEST_CASE("eval_at: exact amplitudes") {
  const RandomVariable x = rv({Rational(1), Rational(2)});
  const RandomVariable d = rv({Rational(1), Rational(-1)});

  SequenceSpec s = power_seq(x, d, Rational(1));
  auto r = eval_at(s, Integer(2));
  CHECK(r.exact);
  CHECK(r.value == rv({make_rational(3, 2), make_rational(3, 2)}));

  SequenceSpec g;
  g.base = x;
  g.terms.push_back({Rate{RateFamily::Geometric, make_rational(1, 2), false}, d});
  auto rg = eval_at(g, Integer(3));
  CHECK(rg.exact);
  CHECK(rg.value == rv({Rational(1) + make_rational(1, 8), Rational(2) - make_rational(1, 8)}));

  // Tabulated prefix wins below its length.
  SequenceSpec pre = power_seq(x, d, Rational(1));
  pre.prefix = {rv({Rational(9), Rational(9)}), rv({Rational(7), Rational(7)})};
  CHECK(eval_at(pre, Integer(1)).value == rv({Rational(9), Rational(9)}));
  CHECK(eval_at(pre, Integer(2)).value == rv({Rational(7), Rational(7)}));
  CHECK(eval_at(pre, Integer(3)).value == eval_at(power_seq(x, d, Rational(1)), Integer(3)).value);
}

TEST_CASE("eval_at: oracle cross-check on a two-term sequence") {
  const RandomVariable x = rv({Rational(0), Rational(1), Rational(-1)});
  const RandomVariable d1 = rv({Rational(2), Rational(0), Rational(1)});
  const RandomVariable d2 = rv({Rational(-1), Rational(1), Rational(0)});
  SequenceSpec s;
  s.base = x;
  s.terms.push_back({Rate{RateFamily::Power, Rational(2), false}, d1});
  s.terms.push_back({Rate{RateFamily::Constant, make_rational(1, 3), true}, d2});
  for (long n : {1L, 2L, 5L, 8L}) {
    const Rational a1 = make_rational(1, n * n);
    const Rational a2 = (n % 2 == 0 ? 1 : -1) * make_rational(1, 3);
    const auto expect = oracle::seq_value(x.values, {a1, a2}, {d1.values, d2.values});
    const auto got = eval_at(s, Integer(n));
    CHECK(got.exact);
    CHECK(got.value.values == expect);
  }
}

TEST_CASE("eval_at: irrational amplitudes are flagged and enclosed") {
  const RandomVariable x = rv({Rational(0)});
  const RandomVariable d = rv({Rational(1)});
  SequenceSpec s;
  s.base = x;
  s.terms.push_back({Rate{RateFamily::LogPow, Rational(1), false}, d});
  const auto r = eval_at(s, Integer(1));
  CHECK(!r.exact);
  const Enclosure e = eval_enclosure_at(s, 0, Integer(1), make_rational(1, 1000000000000L));
  CHECK(e.contains(r.value[0]));
  // 1/log(2) = 1.4426950408...
  CHECK(e.lo > make_rational(14426, 10000));
  CHECK(e.hi < make_rational(14428, 10000));

  // Non-integer power: exact only at perfect squares.
  SequenceSpec h = power_seq(x, d, make_rational(1, 2));
  CHECK(eval_at(h, Integer(4)).exact);
  CHECK(eval_at(h, Integer(4)).value[0] == make_rational(1, 2));
  CHECK(!eval_at(h, Integer(3)).exact);
}

TEST_CASE("limit_rv per rate family") {
  const RandomVariable x = rv({Rational(1), Rational(2)});
  const RandomVariable d = rv({Rational(1), Rational(-1)});

  CHECK(limit_rv(power_seq(x, d, Rational(1))).exists_everywhere);
  CHECK(limit_rv(power_seq(x, d, Rational(1))).limit == x);

  SequenceSpec c;
  c.base = x;
  c.terms.push_back({Rate{RateFamily::Constant, make_rational(1, 2), false}, d});
  const auto lc = limit_rv(c);
  CHECK(lc.exists_everywhere);
  CHECK(lc.limit == rv({make_rational(3, 2), make_rational(3, 2)}));

  // Alternating constant: no limit wherever the direction is nonzero.
  SequenceSpec a;
  a.base = x;
  a.terms.push_back({Rate{RateFamily::Constant, Rational(1), true}, rv({Rational(1), Rational(0)})});
  const auto la = limit_rv(a);
  CHECK(!la.exists_everywhere);
  CHECK(la.no_limit_atoms == std::vector<std::size_t>{0});
  CHECK(la.defined[1]);

  // Growth diverges pointwise.
  const auto lg = limit_rv(power_seq(x, d, Rational(-1)));
  CHECK(lg.no_limit_atoms == std::vector<std::size_t>{0, 1});
}

TEST_CASE("prefix never changes limits") {
  const RandomVariable x = rv({Rational(1), Rational(2)});
  const RandomVariable d = rv({Rational(1), Rational(-1)});
  SequenceSpec s = power_seq(x, d, Rational(2));
  SequenceSpec mutated = s;
  mutated.prefix = {rv({Rational(100), Rational(-100)}), rv({Rational(0), Rational(0)})};
  CHECK(limit_rv(s).limit == limit_rv(mutated).limit);
}

TEST_CASE("series decisions") {
  CHECK(!series_converges(Rate{RateFamily::Power, Rational(1), false}, Rational(1)));
  CHECK(series_converges(Rate{RateFamily::Power, Rational(1), false}, Rational(2)));
  CHECK(series_converges(Rate{RateFamily::Geometric, make_rational(1, 2), false}, make_rational(1, 7)));
  CHECK(!series_converges(Rate{RateFamily::LogPow, Rational(3), false}, Rational(5)));
  CHECK(series_converges(Rate{RateFamily::Constant, Rational(0), false}, Rational(1)));
  CHECK(!series_converges(Rate{RateFamily::Constant, make_rational(1, 9), true}, Rational(1)));
  CHECK(!series_converges(Rate{RateFamily::Power, Rational(-1), false}, Rational(2)));
}

TEST_CASE("resolved limits fill polar gaps") {
  const CredalModel polar = fixtures::polar_third_atom();
  const RandomVariable x = rv({Rational(1), Rational(2), Rational(3)});
  // Oscillation only on the polar atom c.
  SequenceSpec s;
  s.base = x;
  s.terms.push_back({Rate{RateFamily::Constant, Rational(1), true}, rv({Rational(0), Rational(0), Rational(5)})});
  const auto res = resolve_limit(polar, s);
  CHECK(res.ok);
  CHECK(res.derived);
  CHECK(res.limit[0] == 1);
  CHECK(res.limit[1] == 2);

  // Oscillation on a charged atom blocks the limit.
  SequenceSpec bad;
  bad.base = x;
  bad.terms.push_back({Rate{RateFamily::Constant, Rational(1), true}, rv({Rational(1), Rational(0), Rational(0)})});
  const auto res2 = resolve_limit(polar, bad);
  CHECK(!res2.ok);
  CHECK(res2.blocking_atoms == std::vector<std::size_t>{0});

  // A declared limit is taken as-is.
  SequenceSpec dec = bad;
  dec.declared_limit = x;
  CHECK(resolve_limit(polar, dec).ok);
}

TEST_CASE("atom tails: clusters and remainders") {
  const RandomVariable x = rv({Rational(1)});
  SequenceSpec s;
  s.base = x;
  s.terms.push_back({Rate{RateFamily::Power, Rational(1), false}, rv({Rational(2)})});
  s.terms.push_back({Rate{RateFamily::Constant, make_rational(1, 4), true}, rv({Rational(3)})});

  const AtomTail even = atom_tail(s, 0, Parity::Even, Rational(1));
  CHECK(even.cluster.is_finite());
  CHECK(even.cluster.value == make_rational(3, 4));
  REQUIRE(even.remainder.size() == 1);
  CHECK(even.remainder[0].coeff == 2);

  const AtomTail odd = atom_tail(s, 0, Parity::Odd, Rational(1));
  CHECK(odd.cluster.value == make_rational(-3, 4));
}

TEST_CASE("decay engine: tail signs and thresholds") {
  // 3 n^-1 - 5 n^-2: eventually positive.
  auto terms = merge_decay_terms({{Rational(3), RateFamily::Power, Rational(1)},
                                  {Rational(-5), RateFamily::Power, Rational(2)}});
  const SignedTail st = tail_sign(terms);
  CHECK(st.sign == 1);
  for (Integer n = st.from; n < st.from + 16; ++n) {
    const Enclosure v = decay_sum_at(terms, n, make_rational(1, 1 << 24));
    CHECK(v.lo > 0);
  }

  // Threshold indices certify the bound from the index onward.
  const Integer t = decay_threshold_index(terms, make_rational(1, 100));
  const Enclosure at_t = decay_sum_at(terms, t, make_rational(1, 1 << 24));
  CHECK(at_t.abs().hi <= make_rational(1, 100));
  const Enclosure at_2t = decay_sum_at(terms, 2 * t, make_rational(1, 1 << 24));
  CHECK(at_2t.abs().hi <= make_rational(1, 100));

  // Geometric against power: the power term dominates.
  auto mixed = merge_decay_terms({{Rational(-7), RateFamily::Geometric, make_rational(1, 2)},
                                  {make_rational(1, 3), RateFamily::Power, Rational(2)}});
  CHECK(mixed[0].family == RateFamily::Power);
  const SignedTail sm = tail_sign(mixed);
  CHECK(sm.sign == 1);
  const Enclosure vm = decay_sum_at(mixed, sm.from, make_rational(1, 1 << 24));
  CHECK(vm.lo > 0);

  // Logpow dominates any power.
  auto lp = merge_decay_terms({{Rational(-1), RateFamily::LogPow, Rational(1)},
                               {Rational(50), RateFamily::Power, make_rational(1, 2)}});
  CHECK(lp[0].family == RateFamily::LogPow);
  const SignedTail sl = tail_sign(lp);
  CHECK(sl.sign == -1);
  const Enclosure vl = decay_sum_at(lp, sl.from, make_rational(1, 1 << 24));
  CHECK(vl.hi < 0);

  // Cancellation collapses to zero.
  auto zero = merge_decay_terms({{Rational(2), RateFamily::Power, Rational(1)},
                                 {Rational(-2), RateFamily::Power, Rational(1)}});
  CHECK(zero.empty());
  CHECK(tail_sign(zero).sign == 0);
}

TEST_CASE("power threshold index is minimal") {
  CHECK(power_threshold_index(Rational(1), Rational(10)) == 10);
  CHECK(power_threshold_index(Rational(2), Rational(10)) == 4);
  CHECK(power_threshold_index(make_rational(1, 2), Rational(3)) == 9);
  CHECK(power_threshold_index(Rational(3), make_rational(1, 2)) == 1);
}
