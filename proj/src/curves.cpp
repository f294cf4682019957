#include "singshock/curves.hpp"

#include <algorithm>
#include <cmath>

#include "singshock/error.hpp"

namespace singshock {

namespace {

double sign_of(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }

double hugoniot_root(State base, double u) {
  const double du = u - base.u;
  if (std::abs(du) > kHugoniotHalfWidth + 1e-12) {
    fail(ErrorKind::Domain, "Hugoniot locus is defined only for |u - u0| <= sqrt(12)");
  }
  return std::sqrt(std::max(0.0, 1.0 - du * du / 12.0));
}

}  // namespace

double hugoniot_v(State base, double u, Branch branch) {
  const double r = hugoniot_root(base, u);
  return base.v + (u - base.u) * ((base.u + u) / 2.0 + sign_of(branch) * r);
}

double hugoniot_slope(State base, double u, Branch branch) {
  const double r = hugoniot_root(base, u);
  const double du = u - base.u;
  const double s = sign_of(branch);
  if (r == 0.0) {
    fail(ErrorKind::Domain, "Hugoniot slope is unbounded at the end of the locus");
  }
  const double dr = -du / (12.0 * r);
  return (base.u + u) / 2.0 + s * r + du * (0.5 + s * dr);
}

double hugoniot_speed(State base, double u, Branch branch) {
  return (base.u + u) / 2.0 - sign_of(branch) * hugoniot_root(base, u);
}

double rarefaction_v(State base, double u, Family family) {
  const double lin = family == Family::One ? u - base.u : base.u - u;
  return base.v - base.u * base.u / 2.0 + u * u / 2.0 + lin;
}

double rarefaction_slope(double u, Family family) {
  return family == Family::One ? u + 1.0 : u - 1.0;
}

double inverse_rarefaction_v(State right, double u, Family family) {
  // The integral curve through `right`, read as the set of its left states.
  const double lin = family == Family::One ? u - right.u : right.u - u;
  return right.v + (u * u - right.u * right.u) / 2.0 + lin;
}

double curve_D_v(State base, double u) { return base.v + (u - base.u) * (u + 1.0); }

double curve_E_v(State base, double u) { return base.v + (u - base.u) * (base.u - 1.0); }

LocusPoints locus_points(State base) {
  const double u3 = base.u - 3.0;
  return {
      {u3, base.v - 3.0 * base.u + 3.0},
      {u3, curve_D_v(base, u3)},
      {base.u - 2.0, base.v - 2.0 * base.u + 2.0},
  };
}

std::string_view region_name(Region r) {
  switch (r) {
    case Region::Q7: return "Q7";
    case Region::SdslOnly: return "SDSL_ONLY";
    case Region::AboveD: return "ABOVE_D";
    case Region::BelowE: return "BELOW_E";
    case Region::OnJ1: return "ON_J1";
    case Region::HatD: return "HAT_D";
    case Region::HatHatD: return "HAT_HAT_D";
    case Region::HatE: return "HAT_E";
    case Region::HatHatE: return "HAT_HAT_E";
    case Region::D0: return "D0";
    case Region::Classical: return "CLASSICAL";
  }
  return "?";
}

Region classify(State base, State q) {
  const double du = q.u - base.u;
  const double d = curve_D_v(base, q.u);
  const double e = curve_E_v(base, q.u);
  const double tol = kRegionTol * std::max({1.0, std::abs(q.v), std::abs(d), std::abs(e)});
  const double tol_u = kRegionTol * std::max(1.0, std::abs(base.u));

  if (du <= -3.0 + tol_u) {
    if (q.v > d + tol) return Region::AboveD;
    if (q.v < e - tol) return Region::BelowE;
    if (du >= -kHugoniotHalfWidth - tol_u) {
      const double uu = std::max(q.u, base.u - kHugoniotHalfWidth);
      const double s1 = hugoniot_v(base, uu, Branch::Plus);
      const double s2 = hugoniot_v(base, uu, Branch::Minus);
      if (std::abs(q.v - s1) <= tol || std::abs(q.v - s2) <= tol) return Region::OnJ1;
      if (q.v > s1 && q.v < s2) return Region::SdslOnly;
    }
    return Region::Q7;
  }
  if (du >= 0.0) return Region::Classical;

  const double s1 = hugoniot_v(base, q.u, Branch::Plus);
  const double s2 = hugoniot_v(base, q.u, Branch::Minus);
  if (du < -2.0) {
    if (q.v > d + tol) return q.v <= s2 + tol ? Region::HatD : Region::Classical;
    if (q.v < e - tol) return q.v >= s1 - tol ? Region::HatE : Region::Classical;
    return Region::D0;
  }
  if (q.v > e + tol) return q.v <= s2 + tol ? Region::HatHatD : Region::Classical;
  if (q.v < d - tol) return q.v >= s1 - tol ? Region::HatHatE : Region::Classical;
  return Region::SdslOnly;
}

bool in_overcompressive_band(State base, State q) {
  const double d = curve_D_v(base, q.u);
  const double e = curve_E_v(base, q.u);
  const double tol = kRegionTol * std::max({1.0, std::abs(q.v), std::abs(d), std::abs(e)});
  const double tol_u = kRegionTol * std::max(1.0, std::abs(base.u));
  return q.u - base.u <= -2.0 + tol_u && q.v >= e - tol && q.v <= d + tol;
}

bool in_sdsl(State base, State q) {
  switch (classify(base, q)) {
    case Region::AboveD:
    case Region::BelowE:
    case Region::Classical:
      return false;
    default:
      return true;
  }
}

bool in_q7(State base, State q) {
  const Region r = classify(base, q);
  return r == Region::Q7 || r == Region::OnJ1;
}

}  // namespace singshock
