#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subexp/rational.hpp"

namespace subexp {

/// Structured, re-evaluable description of a violated relation.
struct Witness {
  std::string what;
  std::vector<std::pair<std::string, std::string>> data;

  Witness() = default;
  explicit Witness(std::string w) : what(std::move(w)) {}

  Witness& add(std::string key, std::string value) {
    data.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Witness& add(std::string key, const Rational& value) {
    return add(std::move(key), fraction_string(value));
  }
  Witness& add(std::string key, const Integer& value) {
    return add(std::move(key), value.get_str());
  }
};

enum class Outcome { Holds, Fails, NumericOnly };

struct Verdict {
  Outcome outcome = Outcome::Holds;
  std::optional<Witness> witness;                              // Fails
  std::optional<Integer> n_checked;                            // NumericOnly
  std::optional<Rational> residual;                            // NumericOnly
  std::vector<std::pair<std::string, std::string>> notes;      // certified details

  bool holds() const { return outcome == Outcome::Holds; }
  bool fails() const { return outcome == Outcome::Fails; }

  Verdict& note(std::string key, std::string value) {
    notes.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Verdict& note(std::string key, const Rational& value) {
    return note(std::move(key), fraction_string(value));
  }
  Verdict& note(std::string key, const Integer& value) {
    return note(std::move(key), value.get_str());
  }

  static Verdict pass() { return Verdict{}; }
  static Verdict fail(Witness w) {
    Verdict v;
    v.outcome = Outcome::Fails;
    v.witness = std::move(w);
    return v;
  }
  static Verdict numeric_only(Integer n, Rational r) {
    Verdict v;
    v.outcome = Outcome::NumericOnly;
    v.n_checked = std::move(n);
    v.residual = std::move(r);
    return v;
  }
};

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds";
    case Outcome::Fails: return "fails";
    case Outcome::NumericOnly: return "numeric-only";
  }
  return "?";
}

}  // namespace subexp
