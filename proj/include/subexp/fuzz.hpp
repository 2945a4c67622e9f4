#pragma once

#include <cstdint>

#include "subexp/scenario.hpp"

namespace subexp {

struct FuzzBounds {
  std::size_t max_atoms = 8;
  std::size_t max_measures = 6;
  std::size_t max_terms = 3;
};

/// Deterministic function of the seed: weights are random small-denominator
/// rationals normalized exactly, rates come from the closed family set, and a
/// polar atom is forced with probability 1/4.
Scenario generate_random_scenario(std::uint64_t seed, const FuzzBounds& bounds = FuzzBounds{});

/// Deterministic scenario with a dominated, capacity-convergent sequence and
/// certify-dct checks; used by the dominated-convergence battery.
Scenario generate_dominated_scenario(std::uint64_t seed, const FuzzBounds& bounds = FuzzBounds{});

}  // namespace subexp
