#pragma once

#include <vector>

#include "singshock/scenario.hpp"
#include "singshock/state.hpp"

namespace singshock {

/// Uniform cell-centred grid with outflow ghost cells.
struct Grid {
  double x_min = -5.0;
  double x_max = 5.0;
  std::size_t cells = 4000;
  double cfl = 0.45;

  double dx() const { return (x_max - x_min) / static_cast<double>(cells); }
  double center(std::size_t j) const { return x_min + (static_cast<double>(j) + 0.5) * dx(); }
};

/// Throws InvalidInput unless cells >= 16, 0 < cfl < 1 and x_min < x_max.
void validate(const Grid& g);

struct FieldSnapshot {
  double t = 0.0;
  double x_min = 0.0;
  double dx = 0.0;
  std::vector<double> u;
  std::vector<double> v;
  /// Domain integrals of u and v.
  double mass_u = 0.0;
  double mass_v = 0.0;
  /// Time integral of (inflow - outflow) through the two boundaries.
  double boundary_u = 0.0;
  double boundary_v = 0.0;

  double center(std::size_t j) const { return x_min + (static_cast<double>(j) + 0.5) * dx; }
};

/// Snapshots at the requested times (sorted, in (0, t_end]) plus t = 0 and
/// t_end. Point masses in the scenario are deposited into the containing cell.
std::vector<FieldSnapshot> run(const Scenario& initial, const Grid& grid, double t_end,
                               const std::vector<double>& snapshot_times = {});

/// Largest relative deviation of the domain totals from their initial values
/// net of boundary fluxes, over both components and all snapshots.
double conservation_defect(const std::vector<FieldSnapshot>& snaps);

/// Front at the interface with the largest |u| jump, refined to the point where
/// the u integral over a 40-cell window balances the background states. Throws
/// NoFront below a jump of 1e-6.
double measure_shock_position(const FieldSnapshot& snap);

double default_window(const FieldSnapshot& snap);

/// Excess of the v integral over [center - h, center + h] above the background
/// states read just outside the window. Throws WindowClipped if the window and
/// its background cells do not fit in the domain.
double measure_delta_mass(const FieldSnapshot& snap, double window_halfwidth, double center);
/// Window centred on the centroid of the v excess near the steepest u jump.
double measure_delta_mass(const FieldSnapshot& snap, double window_halfwidth);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LinearFit fit_line(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace singshock
