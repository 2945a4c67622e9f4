#pragma once

#include <functional>

#include "subexp/model.hpp"
#include "subexp/verdict.hpp"

namespace subexp {

/// Expectation functional under audit. Defaults to the model's own upper
/// expectation; tests may inject a doctored functional to produce witnesses.
using ExpectationFn = std::function<Rational(const RandomVariable&)>;

struct AxiomCheckInput {
  std::vector<std::pair<RandomVariable, RandomVariable>> sample_pairs;
  std::vector<Rational> lambdas;                 // nonnegative scaling factors
  std::vector<std::vector<EventSet>> chains;     // optional explicit monotone chains
};

/// Monotonicity, constant preservation, sub-additivity, positive homogeneity
/// on the samples; capacity bounds/monotonicity/subadditivity and chain
/// continuity over every event of the space.
Verdict verify_axioms(const CredalModel& model, const AxiomCheckInput& input,
                      const ExpectationFn& functional = nullptr);

/// Default sample set derived from a model and a few variables.
AxiomCheckInput default_axiom_input(const CredalModel& model,
                                    const std::vector<RandomVariable>& variables);

}  // namespace subexp
