#pragma once

#include <map>
#include <optional>
#include <string>

#include "subexp/convergence.hpp"
#include "subexp/model.hpp"
#include "subexp/realset.hpp"
#include "subexp/sequence.hpp"

namespace subexp {

/// One requested audit. Fields are populated according to `type`; name
/// references are validated against the scenario at parse time.
struct CheckSpec {
  std::string type;
  std::string variable;
  std::string sequence;
  std::string limit;                      // monotone-convergence target
  std::vector<std::string> family;        // uniform-integrability list
  std::optional<EventSet> event;          // capacity
  std::optional<EventSchedule> schedule;  // borel-cantelli
  std::vector<Mode> modes;                // converge
  Rational p = Rational(1);
  Rational r = Rational(1);
  std::optional<Rational> lambda;
  std::optional<Rational> epsilon;
  std::optional<Rational> constant;
  std::string dominator;                  // certify-dct
  std::optional<RealSet> set;             // distribution-capacity
  std::optional<ContinuousFn> function;   // continuous-mapping
};

struct Scenario {
  std::string name;
  CredalModel model;
  std::map<std::string, RandomVariable> variables;
  std::map<std::string, SequenceSpec> sequences;
  std::vector<CheckSpec> checks;
  std::optional<Rational> doctor_offset;  // negative-testing hook

  const RandomVariable& variable(const std::string& id) const;
  const SequenceSpec& sequence(const std::string& id) const;
};

/// Parses and fully validates a scenario document (JSON text).
Scenario parse_scenario(const std::string& text);

/// Canonical serialization; parse(serialize(s)) reproduces s exactly.
std::string serialize_scenario(const Scenario& scenario);

bool operator==(const Scenario& a, const Scenario& b);

}  // namespace subexp
