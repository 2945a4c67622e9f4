#include "subexp/decay.hpp"

#include <algorithm>
#include <map>

namespace subexp {

namespace {

// Enclosure of the positive base value g(n) for a decay family.
Enclosure base_value(RateFamily f, const Rational& param, const Integer& n, const Rational& tol) {
  Rate r{f, param, false};
  return r.abs_value_at(n, tol);
}

Enclosure ln_lower_upper(const Rational& x, const Rational& tol) {
  // ln(x) for rational x > 1 via ln(num) - ln(den).
  const Enclosure ln_num = enclose_log_integer(x.get_num(), tol / 2);
  const Enclosure ln_den = enclose_log_integer(x.get_den(), tol / 2);
  return ln_num - ln_den;
}

// Smallest n >= 1 with ratio(n) <= theta, where ratio is certified monotone
// nonincreasing for n >= monotone_from and tends to 0.
template <typename RatioFn>
Integer doubling_search(const Integer& monotone_from, const Rational& theta, RatioFn&& ratio_upper) {
  Integer n = monotone_from < 1 ? Integer(1) : monotone_from;
  for (int iter = 0; iter < 256; ++iter) {
    if (ratio_upper(n) <= theta) return n;
    n *= 2;
  }
  fail_overflow("ratio threshold search did not terminate");
}

Integer geometric_threshold(const Rational& rho, const Rational& tau) {
  // Smallest certified n with rho^n <= tau, 0 < rho < 1.
  if (rho <= tau) return Integer(1);
  const Rational tol = tau / 1024;
  return doubling_search(Integer(1), tau, [&](const Integer& n) {
    return enclose_rational_pow(rho, Rational(n), tol).hi;
  });
}

}  // namespace

bool decays_slower(RateFamily fa, const Rational& pa, RateFamily fb, const Rational& pb) {
  auto rank = [](RateFamily f) {
    switch (f) {
      case RateFamily::LogPow: return 0;
      case RateFamily::Power: return 1;
      case RateFamily::Geometric: return 2;
      default: fail_precondition("constant family has no decay rank");
    }
  };
  if (fa != fb) return rank(fa) < rank(fb);
  switch (fa) {
    case RateFamily::LogPow: return pa < pb;
    case RateFamily::Power: return pa < pb;
    case RateFamily::Geometric: return pa > pb;
    default: fail_precondition("constant family has no decay rank");
  }
}

std::vector<DecayTerm> merge_decay_terms(std::vector<DecayTerm> terms) {
  std::map<std::pair<int, Rational>, Rational> merged;
  for (const auto& t : terms) {
    if (t.family == RateFamily::Constant) fail_precondition("constant term in decay list");
    merged[{static_cast<int>(t.family), t.param}] += t.coeff;
  }
  std::vector<DecayTerm> out;
  for (const auto& [key, coeff] : merged) {
    if (coeff == 0) continue;
    out.push_back(DecayTerm{coeff, static_cast<RateFamily>(key.first), key.second});
  }
  std::sort(out.begin(), out.end(), [](const DecayTerm& a, const DecayTerm& b) {
    return decays_slower(a.family, a.param, b.family, b.param);
  });
  return out;
}

Integer power_threshold_index(const Rational& e, const Rational& bound) {
  if (!(e > 0)) fail_precondition("power threshold needs a positive exponent");
  if (bound <= 1) return Integer(1);
  if (!e.get_num().fits_slong_p() || !e.get_den().fits_ulong_p() || e.get_den() > 1000)
    fail_overflow("power exponent too unwieldy for exact threshold");
  const unsigned long a = static_cast<unsigned long>(e.get_num().get_si());
  const unsigned long b = e.get_den().get_ui();
  Integer kb_num, kb_den;
  mpz_pow_ui(kb_num.get_mpz_t(), bound.get_num().get_mpz_t(), b);
  mpz_pow_ui(kb_den.get_mpz_t(), bound.get_den().get_mpz_t(), b);
  Rational k(kb_num, kb_den);
  k.canonicalize();
  Integer candidate;
  mpz_root(candidate.get_mpz_t(), ceil_to_integer(k).get_mpz_t(), a);
  if (candidate < 1) candidate = 1;
  auto power_ge = [&](const Integer& n) {
    Integer na;
    mpz_pow_ui(na.get_mpz_t(), n.get_mpz_t(), a);
    return Rational(na) >= k;
  };
  while (!power_ge(candidate)) ++candidate;
  while (candidate > 1 && power_ge(candidate - 1)) --candidate;
  return candidate;
}

Integer ratio_threshold_index(RateFamily hf, const Rational& hp,
                              RateFamily gf, const Rational& gp, const Rational& theta) {
  if (!(theta > 0)) fail_precondition("ratio threshold needs theta > 0");
  if (!decays_slower(gf, gp, hf, hp))
    fail_precondition("ratio threshold expects h strictly faster than g");
  const Rational tol = theta / 1024;

  if (hf == RateFamily::Power && gf == RateFamily::Power)
    return power_threshold_index(hp - gp, 1 / theta);

  if (hf == RateFamily::Geometric && gf == RateFamily::Geometric) {
    Rational rho = hp / gp;
    rho.canonicalize();
    return geometric_threshold(rho, theta);
  }

  if (hf == RateFamily::Geometric && gf == RateFamily::Power) {
    // r^n n^p decreasing once n > p / ln(1/r).
    const Rational ln_inv_r = ln_lower_upper(1 / hp, make_rational(1, 1 << 20)).lo;
    Integer from = ln_inv_r > 0 ? floor_to_integer(gp / ln_inv_r) + 1 : Integer(1);
    return doubling_search(from, theta, [&](const Integer& n) {
      const Enclosure geo = base_value(RateFamily::Geometric, hp, n, tol);
      const Enclosure pw = enclose_rational_pow(Rational(n), gp, tol);
      return Rational(geo.hi * pw.hi);
    });
  }

  if (hf == RateFamily::Geometric && gf == RateFamily::LogPow) {
    // r^n (log(n+1))^q decreasing once (n+1)log(n+1) > q/ln(1/r); n >= 2 and
    // n+1 > q/ln(1/r) suffices.
    const Rational ln_inv_r = ln_lower_upper(1 / hp, make_rational(1, 1 << 20)).lo;
    Integer from = ln_inv_r > 0 ? floor_to_integer(gp / ln_inv_r) + 1 : Integer(2);
    if (from < 2) from = 2;
    return doubling_search(from, theta, [&](const Integer& n) {
      const Enclosure geo = base_value(RateFamily::Geometric, hp, n, tol);
      const Enclosure lg = enclose_log_integer(n + 1, make_rational(1, 1 << 20));
      const Enclosure lgq = enclose_pow_of(lg, gp, tol);
      return Rational(geo.hi * lgq.hi);
    });
  }

  if (hf == RateFamily::Power && gf == RateFamily::LogPow) {
    // n^-p (log(n+1))^q decreasing once n+1 >= e^(q/p).
    Integer from = exp_upper_integer(gp / hp);
    return doubling_search(from, theta, [&](const Integer& n) {
      const Enclosure pw = enclose_rational_pow(Rational(n), -hp, tol);
      const Enclosure lg = enclose_log_integer(n + 1, make_rational(1, 1 << 20));
      const Enclosure lgq = enclose_pow_of(lg, gp, tol);
      return Rational(pw.hi * lgq.hi);
    });
  }

  if (hf == RateFamily::LogPow && gf == RateFamily::LogPow) {
    // (log(n+1))^(gp-hp) <= theta iff log(n+1) >= (1/theta)^(1/(hp-gp)).
    const Rational delta = hp - gp;
    const Enclosure r = enclose_rational_pow(1 / theta, 1 / delta, make_rational(1, 1 << 20));
    return exp_upper_integer(r.hi);
  }

  fail_precondition("unsupported ratio family pair");
}

SignedTail tail_sign(const std::vector<DecayTerm>& terms) {
  if (terms.empty()) return SignedTail{0, Integer(1)};
  if (terms.size() == 1) return SignedTail{sign_of(terms[0].coeff), Integer(1)};
  const DecayTerm& dom = terms[0];
  const Rational dom_abs = rational_abs(dom.coeff);
  const long k = static_cast<long>(terms.size()) - 1;
  Integer from(1);
  for (std::size_t j = 1; j < terms.size(); ++j) {
    const Rational theta = dom_abs / (Rational(2 * k) * rational_abs(terms[j].coeff));
    Integer nj = ratio_threshold_index(terms[j].family, terms[j].param,
                                       dom.family, dom.param, theta);
    if (nj > from) from = nj;
  }
  return SignedTail{sign_of(dom.coeff), from};
}

Integer decay_threshold_index(const std::vector<DecayTerm>& terms, const Rational& bound) {
  if (!(bound > 0)) fail_precondition("decay threshold needs a positive bound");
  Integer from(1);
  const Rational share = bound / Rational(static_cast<long>(terms.size() == 0 ? 1 : terms.size()));
  for (const auto& t : terms) {
    const Rational tau = share / rational_abs(t.coeff);
    Integer nj(1);
    switch (t.family) {
      case RateFamily::Power:
        nj = power_threshold_index(t.param, 1 / tau);
        break;
      case RateFamily::Geometric:
        nj = geometric_threshold(t.param, tau);
        break;
      case RateFamily::LogPow: {
        const Enclosure r = enclose_rational_pow(1 / tau, 1 / t.param, make_rational(1, 1 << 20));
        nj = exp_upper_integer(r.hi);
        break;
      }
      case RateFamily::Constant:
        fail_precondition("constant term in decay list");
    }
    if (nj > from) from = nj;
  }
  return from;
}

Enclosure decay_sum_at(const std::vector<DecayTerm>& terms, const Integer& n, const Rational& tol) {
  Enclosure sum = Enclosure::exact(Rational(0));
  if (terms.empty()) return sum;
  const Rational share = tol / Rational(static_cast<long>(terms.size()));
  for (const auto& t : terms) {
    const Rational each = share / rational_max(Rational(1), rational_abs(t.coeff));
    sum = sum + base_value(t.family, t.param, n, each).scaled(t.coeff);
  }
  return sum;
}

}  // namespace subexp
