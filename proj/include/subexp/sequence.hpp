#pragma once

#include <optional>

#include "subexp/decay.hpp"
#include "subexp/model.hpp"
#include "subexp/verdict.hpp"

namespace subexp {

struct SequenceTerm {
  Rate rate;
  RandomVariable direction;
};

/// X_n = base + sum_k a_n^(k) direction_k for n beyond the prefix.
struct SequenceSpec {
  RandomVariable base;
  std::vector<SequenceTerm> terms;
  std::vector<RandomVariable> prefix;  // overrides X_n for n <= prefix.size()
  std::optional<RandomVariable> declared_limit;
  bool tabulated_only = false;         // prefix is all that is known

  std::size_t atom_count() const { return base.size(); }
  std::size_t prefix_length() const { return prefix.size(); }
  void validate() const;

  bool operator==(const SequenceSpec& o) const;
};

struct EvalResult {
  RandomVariable value;
  bool exact = true;
};

/// Exact X_n where representable; irrational amplitudes are rendered from
/// certified enclosures of width <= 10^-12 and flagged inexact.
EvalResult eval_at(const SequenceSpec& seq, const Integer& n);

/// Certified enclosure of X_n(atom).
Enclosure eval_enclosure_at(const SequenceSpec& seq, std::size_t atom, const Integer& n,
                            const Rational& tol);

/// X_n(atom) - target along one parity class: cluster limit plus a merged
/// decaying remainder.
struct AtomTail {
  LimitVal cluster;
  std::vector<DecayTerm> remainder;
};

AtomTail atom_tail(const SequenceSpec& seq, std::size_t atom, Parity parity,
                   const Rational& target);

/// Pointwise limit analysis over all atoms.
struct LimitStatus {
  bool exists_everywhere = false;
  RandomVariable limit;                  // defined where `defined` is true
  std::vector<bool> defined;             // per atom
  std::vector<std::size_t> no_limit_atoms;
};

LimitStatus limit_rv(const SequenceSpec& seq);

/// Target the convergence checkers measure against: the declared limit when
/// present, otherwise the derived pointwise limit (with polar no-limit atoms
/// filled by their even-parity cluster when finite, else zero).
struct ResolvedLimit {
  bool ok = false;
  RandomVariable limit;
  bool derived = false;
  std::vector<std::size_t> blocking_atoms;  // non-polar atoms with no limit
};

ResolvedLimit resolve_limit(const CredalModel& model, const SequenceSpec& seq);

/// Decides sum_n |a_n|^s < infinity for a rate.
bool series_converges(const Rate& rate, const Rational& s);

}  // namespace subexp
