#pragma once

#include <string_view>

#include "singshock/state.hpp"

namespace singshock {

/// Half-width of the Hugoniot locus in u.
inline const double kHugoniotHalfWidth = std::sqrt(12.0);

/// Plus is the lower branch S1, minus the upper branch S2 (for u < u0).
enum class Branch { Plus, Minus };

double hugoniot_v(State base, double u, Branch branch);
/// dv/du along a Hugoniot branch.
double hugoniot_slope(State base, double u, Branch branch);
/// Speed of the discontinuity from `base` to the branch point at u.
double hugoniot_speed(State base, double u, Branch branch);

/// Integral curve of the family through `base`.
double rarefaction_v(State base, double u, Family family);
double rarefaction_slope(double u, Family family);
/// Left states at abscissa u whose forward rarefaction of the family reaches `right`.
double inverse_rarefaction_v(State right, double u, Family family);

/// Right states whose jump from `base` travels at lambda1(base).
double curve_D_v(State base, double u);
/// Right states whose jump from `base` travels at lambda2 of the right state.
double curve_E_v(State base, double u);

struct LocusPoints {
  State d_tilde;
  State g_tilde;
  State de_corner;
};

LocusPoints locus_points(State base);

enum class Region {
  Q7,
  SdslOnly,
  AboveD,
  BelowE,
  OnJ1,
  HatD,
  HatHatD,
  HatE,
  HatHatE,
  D0,
  Classical,
};

std::string_view region_name(Region r);

Region classify(State base, State q);

/// E <= v <= D with u <= u0 - 2: the jump from base is overcompressive.
bool in_overcompressive_band(State base, State q);
bool in_sdsl(State base, State q);
bool in_q7(State base, State q);

/// Relative tolerance used for region membership.
inline constexpr double kRegionTol = 1e-9;

}  // namespace singshock
