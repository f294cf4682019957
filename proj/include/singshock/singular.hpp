#pragma once

#include <optional>

#include "singshock/state.hpp"

namespace singshock {

struct AlphaSplit {
  double a0 = 0.0;
  double a1 = 0.0;
};

/// Straight singular shock: a jump from `left` to `right` carrying the point
/// mass zeta0 + k (t - birth.t) in v.
struct SingularShock {
  State left;
  State right;
  double speed = 0.0;
  double zeta0 = 0.0;
  double k = 0.0;
  Point birth;
  /// Shares of beta carried by alpha0^2 and alpha1^2.
  AlphaSplit split;
  bool overcompressive = false;

  double position(double t) const { return birth.x + speed * (t - birth.t); }
};

double shock_speed(State left, State right);

/// Rankine-Hugoniot deficiency c[v] - [g(u)] of the jump.
double growth_rate(State left, State right);

AlphaSplit alpha_split(State left, State right, double c);

bool is_overcompressive(State left, State right, double c);

double strength_at(const SingularShock& ss, double t);

std::optional<double> vanish_time(const SingularShock& ss);

/// Builds the shock record; throws NotRepresentable when the split coefficients
/// would be negative.
SingularShock make_singular_shock(State left, State right, double zeta0, Point birth);

}  // namespace singshock
