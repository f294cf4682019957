#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "singshock/state.hpp"
#include "singshock/timeline.hpp"

namespace singshock {

/// Centred rarefaction fan with edge states `tail` and `head` on the same
/// integral curve; rays x = center.x + xi (t - center.t).
struct FanDescriptor {
  Family family = Family::One;
  Point center;
  State tail;
  State head;

  double xi_tail() const { return lambda(tail, family); }
  double xi_head() const { return lambda(head, family); }
};

/// Validates ordering and that `head` lies on the integral curve through `tail`.
FanDescriptor make_fan(Family family, Point center, State tail, State head);

/// Throws OutsideFan if xi is outside [xi_tail, xi_head] by more than 1e-12.
State fan_state(const FanDescriptor& fd, double xi);

enum class PathEvent {
  Completed,
  Vanished,
  ExitedFan,
  ReachedD,
  ReachedE,
  OvercompressibilityLost,
};

std::string_view path_event_name(PathEvent e);

using PathSample = TrajectorySample;

struct PathTrajectory {
  std::vector<PathSample> samples;
  PathEvent terminal = PathEvent::Completed;

  const PathSample& front() const { return samples.front(); }
  const PathSample& back() const { return samples.back(); }
};

struct PathOptions {
  double steps_per_unit_time = 10000.0;
  double event_tol = 1e-10;
  double t_end = std::numeric_limits<double>::infinity();
  /// Keep integrating into the constant state beyond the fan head instead of
  /// stopping with ExitedFan.
  bool continue_past_head = false;
};

/// Singular shock with constant left state crossing the fan (first stage).
/// Stops at the first of: strength zero, fan exit, the jump reaching the D
/// curve of `left` (speed = lambda1(left)) or, for a 1-fan, the E curve
/// (speed = lambda2 of the fan state). A 2-fan state on E moves along the path
/// itself, so the path only approaches that ray and no event fires.
PathTrajectory integrate_path(State left, const FanDescriptor& fd, Point start, double zeta,
                              const PathOptions& opts = {});

/// Singular shock sliding along D: the left state runs up the 1-rarefaction
/// curve of `left_base` so that the fan state stays on its D curve, while a
/// 1-simple wave is shed behind the path. Starts where integrate_path stopped
/// with ReachedD.
PathTrajectory integrate_sliding_path(State left_base, const FanDescriptor& fd, Point start,
                                      double beta0, const PathOptions& opts = {});

/// Speed expression in closed form for a path starting at time T; diagnostic only.
double closed_form_c(State s0, State s1, double T, double t);

enum class CrossingOutcome {
  /// Left the fan through its head as a single singular shock.
  Exited,
  /// Left the fan through its head while sliding on D: 1-simple wave + singular shock.
  ExitedSliding,
  Vanished,
  Completed,
  /// Configuration the construction does not cover (1-fan reaching E, sliding
  /// path losing overcompressibility).
  Unsupported,
};

std::string_view crossing_outcome_name(CrossingOutcome o);

struct FanCrossing {
  std::vector<PathTrajectory> stages;
  CrossingOutcome outcome = CrossingOutcome::Completed;
  State left_base;
  bool had_decreasing_phase = false;
  /// 'a'..'g' when the outcome fixes a regime, otherwise empty.
  std::string regime;
  /// Set when a 2-fan path is converging onto the ray whose state lies on E.
  std::optional<State> asymptotic_right;
  /// Growth rate of the straight singular shock continuing after the fan.
  double k_after = 0.0;

  const PathSample& end() const { return stages.back().back(); }
};

FanCrossing cross_fan(State left, const FanDescriptor& fd, Point start, double zeta,
                      const PathOptions& opts = {});

PathTrajectory reflect(const PathTrajectory& p);
FanDescriptor reflect(const FanDescriptor& fd);

/// Tolerance below which a growth rate counts as zero when labelling regimes.
inline constexpr double kZeroRateTol = 1e-7;

}  // namespace singshock
