#pragma once

#include "subexp/model.hpp"
#include "subexp/pwfn.hpp"
#include "subexp/sequence.hpp"
#include "subexp/verdict.hpp"

namespace subexp {

enum class Mode { QS, Capacity, Lp, Distribution, Complete, SLr };

const char* mode_name(Mode mode);

struct ModeParams {
  Mode mode = Mode::QS;
  Rational p = Rational(1);  // Lp
  Rational r = Rational(1);  // SLr
  std::vector<Rational> epsilon_grid = default_epsilon_grid();
  Integer n_max = Integer(10000);

  static std::vector<Rational> default_epsilon_grid();
};

Verdict check_convergence(const CredalModel& model, const SequenceSpec& seq,
                          const ModeParams& params);

struct ImplicationReport {
  Verdict qs, capacity, lp, distribution, complete, slr;
  std::vector<std::pair<std::string, bool>> arrows;  // name -> violated
  bool any_violation() const;
};

ImplicationReport implication_audit(const CredalModel& model, const SequenceSpec& seq,
                                    const Rational& r, const Rational& p);

/// Subsequence probe n(k) = offset + stride*k, or k^2.
struct IndexMap {
  std::string name;
  Integer offset = Integer(0);
  Integer stride = Integer(1);
  bool squares = false;

  Integer at(const Integer& k) const;  // k >= 1
};

std::vector<IndexMap> default_probes();

Verdict subsequence_principle(const CredalModel& model, const SequenceSpec& seq,
                              const std::vector<IndexMap>& probes);

/// Continuous function with an explicit modulus of continuity on bounded
/// ranges.
struct ContinuousFn {
  enum class Kind { Identity, Affine, Square, Abs, PwLinear };
  Kind kind = Kind::Identity;
  Rational a = Rational(1), b = Rational(0);  // affine
  PwFn pw;                                    // PwLinear; must be continuous

  Rational eval(const Rational& x) const;
  /// |x-y| < delta implies |f(x)-f(y)| < eps on [-M, M].
  Rational modulus_delta(const Rational& eps, const Rational& range_bound) const;
  std::string describe() const;
};

Verdict continuous_mapping_check(const CredalModel& model, const SequenceSpec& seq,
                                 const ContinuousFn& f, const ModeParams& params);

struct MarkovResult {
  Rational lhs;
  Enclosure rhs;
  std::optional<Rational> rhs_exact;
  Verdict verdict;
};

MarkovResult markov_bound(const CredalModel& model, const RandomVariable& x,
                          const Rational& lam, const Rational& p);

/// A_n for n <= prefix length, then `tail` forever.
struct EventSchedule {
  std::vector<EventSet> prefix;
  EventSet tail;
};

Verdict borel_cantelli_check(const CredalModel& model, const EventSchedule& schedule);

struct DCTCertificate {
  Rational epsilon;
  Rational cutoff;       // c with both truncation tails exactly zero
  Integer n_threshold;   // N
  struct Sample {
    Integer n;
    Rational truncation;     // E[|X_n - X| I(|X_n|<=c, |X|<=c)]
    Rational tail_xn;        // 2 E[|X_n| I(|X_n|>c)]
    Rational tail_x;         // 2 E[|X| I(|X|>c)]
    Rational deviation_l1;   // E[|X_n - X|] (upper bound when inexact)
    bool exact;
  };
  std::vector<Sample> samples;
  Integer analytic_tail_from;
  Verdict limit_membership;  // X in L^1_b with stabilization index
  std::vector<std::pair<std::string, std::string>> notes;
};

DCTCertificate dct_certificate(const CredalModel& model, const SequenceSpec& seq,
                               const RandomVariable& dominator, const Rational& epsilon);

/// Shared per-atom deviation analysis against the resolved limit.
struct DeviationContext {
  ResolvedLimit target;
  struct Atom {
    std::size_t index;
    AtomTail dev_even, dev_odd;
    SignedTail sign_even, sign_odd;
  };
  std::vector<Atom> charged;  // non-polar atoms only
  bool clusters_all_zero = false;
  bool any_infinite = false;
  std::vector<Rational> nonzero_cluster_magnitudes;
  std::vector<Rational> observed_deviation_magnitudes;  // |X_n - L| at small n
};

DeviationContext analyze_deviation(const CredalModel& model, const SequenceSpec& seq);

}  // namespace subexp
