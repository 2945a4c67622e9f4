#pragma once

#include <array>

#include "subexp/model.hpp"
#include "subexp/pwfn.hpp"
#include "subexp/realset.hpp"
#include "subexp/sequence.hpp"
#include "subexp/stepfun.hpp"
#include "subexp/verdict.hpp"

namespace subexp {

/// Capacity of the preimage X^{-1}(A); exact.
Rational distribution_capacity(const CredalModel& model, const RandomVariable& x,
                               const RealSet& a);

/// Values carrying positive capacity mass: {v : E[I(X=v)] > 0}.
std::vector<Rational> capacity_atoms(const CredalModel& model, const RandomVariable& x);

/// C_X(A u B) + C_X(A n B) >= C_X(A) + C_X(B) over all pairs of subsets of
/// the value set; on success additionally checks disjoint superadditivity.
Verdict two_monotone_check(const CredalModel& model, const RandomVariable& x);

/// Ordering, monotonicity, right continuity, limits, and continuity at
/// massless points for the distribution function pair.
Verdict pair_properties_check(const CredalModel& model, const RandomVariable& x);

/// Exact decision of convergence in distribution toward the resolved limit:
/// the pushforward law hulls of both parity cluster variables must coincide
/// with the limit's. A Fails witness carries a separating test function.
Verdict distribution_convergence(const CredalModel& model, const SequenceSpec& seq);

struct PortmanteauAudit {
  std::array<Verdict, 6> claims;
  bool all_agree = false;
  std::vector<std::pair<std::string, bool>> arrows;  // name -> violated
  std::vector<std::pair<std::string, std::string>> notes;
};

PortmanteauAudit portmanteau_audit(const CredalModel& model, const SequenceSpec& seq);

/// Distribution-function convergence criteria: pointwise convergence of the
/// pair off the capacity atoms, half-open unions with massless endpoints, and
/// agreement with convergence in distribution.
Verdict df_convergence_audit(const CredalModel& model, const SequenceSpec& seq);

/// Constant limits upgrade distributional convergence to capacity
/// convergence; verifies the bounding chain via the distribution pair.
Verdict constant_limit_check(const CredalModel& model, const SequenceSpec& seq,
                             const Rational& c);

}  // namespace subexp
