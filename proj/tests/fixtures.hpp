#pragma once

#include "subexp/model.hpp"

namespace fixtures {

using namespace subexp;

// Two atoms, point masses on each: the smallest genuinely sublinear model.
inline CredalModel two_atom_deltas() {
  CredalModel m;
  m.space.atoms = {"a", "b"};
  m.measures = {Measure{"Pa", {Rational(1), Rational(0)}},
                Measure{"Pb", {Rational(0), Rational(1)}}};
  return m;
}

// Three atoms, two overlapping uniform pair measures.
inline CredalModel three_atom() {
  CredalModel m;
  m.space.atoms = {"a", "b", "c"};
  m.measures = {
      Measure{"P1", {make_rational(1, 2), make_rational(1, 2), Rational(0)}},
      Measure{"P2", {Rational(0), make_rational(1, 2), make_rational(1, 2)}}};
  return m;
}

// Single measure supported on {a,b}; c is polar.
inline CredalModel polar_third_atom() {
  CredalModel m;
  m.space.atoms = {"a", "b", "c"};
  m.measures = {
      Measure{"P", {make_rational(1, 2), make_rational(1, 2), Rational(0)}}};
  return m;
}

inline RandomVariable rv(std::initializer_list<Rational> vals) {
  return RandomVariable(std::vector<Rational>(vals));
}

}  // namespace fixtures
