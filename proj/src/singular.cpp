#include "singshock/singular.hpp"

#include <algorithm>
#include <cmath>

#include "singshock/error.hpp"

namespace singshock {

namespace {

constexpr double kJumpTol = 1e-14;
constexpr double kSplitTol = 1e-12;

void require_jump(State left, State right) {
  if (std::abs(jump(left.u, right.u)) < kJumpTol) {
    fail(ErrorKind::DegenerateJump, "left and right states share the same u");
  }
}

}  // namespace

double shock_speed(State left, State right) {
  require_jump(left, right);
  return jump(flux(left).f1, flux(right).f1) / jump(left.u, right.u);
}

double growth_rate(State left, State right) {
  const double c = shock_speed(left, right);
  return c * jump(left.v, right.v) - jump(g_flux(left.u), g_flux(right.u));
}

AlphaSplit alpha_split(State left, State right, double c) {
  const double u0 = left.u;
  const double u1 = right.u;
  if (!(u0 > u1)) {
    fail(ErrorKind::NotRepresentable, "split requires u0 > u1");
  }
  const double width = u0 - u1;
  const double slack = kSplitTol * std::max(1.0, std::abs(c));
  if (c < u1 - slack || c > u0 + slack) {
    fail(ErrorKind::NotRepresentable, "speed outside [u1, u0] gives a negative alpha^2");
  }
  AlphaSplit s;
  if (c <= u1) {
    s = {1.0, 0.0};
  } else if (c >= u0) {
    s = {0.0, 1.0};
  } else {
    s.a0 = (u0 - c) / width;
    s.a1 = 1.0 - s.a0;
  }
  return s;
}

bool is_overcompressive(State left, State right, double c) {
  const double slack = 1e-10 * std::max(1.0, std::abs(c));
  return lambda(left, Family::One) + slack >= c && c + slack >= lambda(right, Family::Two);
}

double strength_at(const SingularShock& ss, double t) {
  const double beta = ss.zeta0 + ss.k * (t - ss.birth.t);
  if (beta < -1e-12) {
    fail(ErrorKind::NegativeStrength, "strength evaluated past the vanish time");
  }
  return beta;
}

std::optional<double> vanish_time(const SingularShock& ss) {
  if (ss.k < 0.0 && ss.zeta0 >= 0.0) return ss.birth.t - ss.zeta0 / ss.k;
  return std::nullopt;
}

SingularShock make_singular_shock(State left, State right, double zeta0, Point birth) {
  SingularShock ss;
  ss.left = left;
  ss.right = right;
  ss.speed = shock_speed(left, right);
  ss.k = growth_rate(left, right);
  ss.zeta0 = zeta0;
  ss.birth = birth;
  ss.split = alpha_split(left, right, ss.speed);
  ss.overcompressive = is_overcompressive(left, right, ss.speed);
  return ss;
}

}  // namespace singshock
