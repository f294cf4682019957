#pragma once

#include <vector>

#include "singshock/state.hpp"

namespace singshock {

/// Piecewise-constant initial data with optional point masses in v at the
/// breakpoints: states[i] lies between breakpoints[i-1] and breakpoints[i].
struct Scenario {
  std::vector<State> states;
  std::vector<double> breakpoints;
  std::vector<double> deltas;
  double t_max = 1.0;

  double delta_at(std::size_t i) const { return i < deltas.size() ? deltas[i] : 0.0; }
  State state_at(double x) const;
};

/// Throws InvalidInput when the invariants do not hold.
void validate(const Scenario& s);

Scenario shifted(const Scenario& s, double dx);

}  // namespace singshock
