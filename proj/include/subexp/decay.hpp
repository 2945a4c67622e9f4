#pragma once

#include <vector>

#include "subexp/rates.hpp"

namespace subexp {

/// Signed multiple of a strictly decaying positive base sequence g(n):
/// power p > 0 (n^-p), geometric (r^n), logpow ((log(n+1))^-q).
struct DecayTerm {
  Rational coeff;  // nonzero after merging
  RateFamily family = RateFamily::Power;
  Rational param;
};

/// Merges terms sharing (family, param), drops zero coefficients, sorts
/// slowest-decaying first.
std::vector<DecayTerm> merge_decay_terms(std::vector<DecayTerm> terms);

/// Strict "decays slower than" order used for dominance.
bool decays_slower(RateFamily fa, const Rational& pa, RateFamily fb, const Rational& pb);

struct SignedTail {
  int sign = 0;    // sign of the term sum for every n >= from
  Integer from = 1;
};

/// Asymptotic sign of sum_j c_j g_j(n); terms must be merged.
SignedTail tail_sign(const std::vector<DecayTerm>& terms);

/// Certified N with sum_j |c_j| g_j(n) <= bound for all n >= N.
Integer decay_threshold_index(const std::vector<DecayTerm>& terms, const Rational& bound);

/// Certified enclosure of sum_j c_j g_j(n).
Enclosure decay_sum_at(const std::vector<DecayTerm>& terms, const Integer& n, const Rational& tol);

/// Certified N with h(n) <= theta * g(n) for all n >= N, where h decays
/// strictly faster than g and theta > 0.
Integer ratio_threshold_index(RateFamily hf, const Rational& hp,
                              RateFamily gf, const Rational& gp, const Rational& theta);

/// Smallest n with n^e >= bound, for rational e > 0 and bound > 0.
Integer power_threshold_index(const Rational& e, const Rational& bound);

}  // namespace subexp
