#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subexp/rational.hpp"

namespace subexp {

/// Finite set of outcome labels with a fixed canonical order.
struct SampleSpace {
  std::vector<std::string> atoms;

  std::size_t size() const { return atoms.size(); }
  void validate() const;
};

/// Probability mass per atom; exact weights summing to 1.
struct Measure {
  std::string name;
  std::vector<Rational> weights;

  void validate(std::size_t atom_count) const;
};

/// Real value per atom.
struct RandomVariable {
  std::vector<Rational> values;

  RandomVariable() = default;
  explicit RandomVariable(std::vector<Rational> v) : values(std::move(v)) {}
  static RandomVariable constant(const Rational& c, std::size_t atoms) {
    return RandomVariable(std::vector<Rational>(atoms, c));
  }

  std::size_t size() const { return values.size(); }
  const Rational& operator[](std::size_t i) const { return values[i]; }
  Rational& operator[](std::size_t i) { return values[i]; }
  bool operator==(const RandomVariable& o) const { return values == o.values; }

  Rational max_abs() const;
};

RandomVariable operator+(const RandomVariable& a, const RandomVariable& b);
RandomVariable operator-(const RandomVariable& a, const RandomVariable& b);
RandomVariable operator-(const RandomVariable& a);
RandomVariable operator*(const Rational& c, const RandomVariable& a);

/// Subset of atoms, canonical: sorted unique indices.
struct EventSet {
  std::vector<std::size_t> members;

  EventSet() = default;
  explicit EventSet(std::vector<std::size_t> m);
  static EventSet from_mask(std::uint64_t mask, std::size_t atoms);

  bool contains(std::size_t atom) const;
  bool empty() const { return members.empty(); }
  std::uint64_t mask(std::size_t atoms) const;
  void validate(std::size_t atom_count) const;
  bool operator==(const EventSet& o) const { return members == o.members; }
};

struct CredalModel {
  SampleSpace space;
  std::vector<Measure> measures;

  void validate() const;
  std::size_t atom_count() const { return space.size(); }

  Rational linear_expectation(std::size_t measure_index, const RandomVariable& x) const;

  /// True when every measure gives the atom zero mass.
  bool atom_is_polar(std::size_t atom) const;
  std::vector<std::size_t> non_polar_atoms() const;

  /// V table over all 2^m events; guarded for small spaces.
  std::vector<Rational> capacity_table() const;
};

Rational upper_expectation(const CredalModel& model, const RandomVariable& x);
Rational lower_expectation(const CredalModel& model, const RandomVariable& x);
Rational capacity(const CredalModel& model, const EventSet& a);
bool is_polar(const CredalModel& model, const EventSet& a);

RandomVariable indicator(const EventSet& a, std::size_t atoms);

/// Atomwise application of an n-ary real function.
RandomVariable lift(const std::function<Rational(const std::vector<Rational>&)>& f,
                    const std::vector<RandomVariable>& args);
RandomVariable lift1(const std::function<Rational(const Rational&)>& f, const RandomVariable& x);

RandomVariable rv_abs(const RandomVariable& x);
RandomVariable rv_min(const RandomVariable& a, const RandomVariable& b);
RandomVariable rv_max(const RandomVariable& a, const RandomVariable& b);
RandomVariable rv_abs_pow(const RandomVariable& x, long p);  // |x|^p atomwise

}  // namespace subexp
