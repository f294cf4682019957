#include "singshock/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "singshock/error.hpp"

namespace singshock {

State Scenario::state_at(double x) const {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  return states[static_cast<std::size_t>(it - breakpoints.begin())];
}

void validate(const Scenario& s) {
  if (s.breakpoints.empty()) fail(ErrorKind::InvalidInput, "scenario needs at least one breakpoint");
  if (s.states.size() != s.breakpoints.size() + 1) {
    fail(ErrorKind::InvalidInput, "states must outnumber breakpoints by one");
  }
  if (!s.deltas.empty() && s.deltas.size() != s.breakpoints.size()) {
    fail(ErrorKind::InvalidInput, "deltas must align with breakpoints");
  }
  for (const State& st : s.states) {
    if (!is_finite(st)) fail(ErrorKind::InvalidInput, "non-finite state");
  }
  for (std::size_t i = 0; i < s.breakpoints.size(); ++i) {
    if (!std::isfinite(s.breakpoints[i])) fail(ErrorKind::InvalidInput, "non-finite breakpoint");
    if (i > 0 && !(s.breakpoints[i] > s.breakpoints[i - 1])) {
      fail(ErrorKind::InvalidInput, "breakpoints must be strictly increasing");
    }
  }
  for (double z : s.deltas) {
    if (!std::isfinite(z) || z < 0.0) fail(ErrorKind::InvalidInput, "deltas must be finite and >= 0");
  }
  if (!std::isfinite(s.t_max) || !(s.t_max > 0.0)) {
    fail(ErrorKind::InvalidInput, "t_max must be positive");
  }
}

Scenario shifted(const Scenario& s, double dx) {
  Scenario out = s;
  for (double& b : out.breakpoints) b += dx;
  return out;
}

}  // namespace singshock
