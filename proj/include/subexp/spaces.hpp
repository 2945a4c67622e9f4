#pragma once

#include "subexp/model.hpp"
#include "subexp/sequence.hpp"
#include "subexp/verdict.hpp"

namespace subexp {

/// ||X||_p: the exact p-th power is the authoritative value; the root is a
/// 12-digit rendering backed by a certified enclosure.
struct SeminormReport {
  Rational p;
  std::optional<Rational> power_exact;  // E[|X|^p] when representable
  Enclosure power;
  Enclosure root;
  std::string root_decimal;
  bool exact = false;
};

SeminormReport lp_seminorm(const CredalModel& model, const RandomVariable& x, const Rational& p);

/// Tail E[|X|^p I(|X|>n)] for n = 1,2,...; always stabilizes at exactly 0.
Verdict lb_membership(const CredalModel& model, const RandomVariable& x, const Rational& p);

struct UIReport {
  std::vector<std::pair<Rational, Enclosure>> modulus;  // cutoff -> sup value (or bound)
  bool values_exact = true;
};

std::pair<UIReport, Verdict> uniform_integrability_list(const CredalModel& model,
                                                        const std::vector<RandomVariable>& family);

std::pair<UIReport, Verdict> uniform_integrability_seq(const CredalModel& model,
                                                       const SequenceSpec& seq);

/// Monotone increasing sequences: verifies E[X_n] climbs to E[X_limit].
Verdict monotone_convergence_check(const CredalModel& model, const SequenceSpec& seq,
                                   const RandomVariable& x_limit);

}  // namespace subexp
