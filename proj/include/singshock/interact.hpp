#pragma once

#include <limits>
#include <optional>
#include <utility>

#include "singshock/fanode.hpp"
#include "singshock/riemann.hpp"
#include "singshock/scenario.hpp"
#include "singshock/state.hpp"
#include "singshock/timeline.hpp"

namespace singshock {

/// A front as seen by the collision test: position as a function of time.
struct Line {
  Point origin;
  double speed = 0.0;

  double position(double t) const { return origin.x + speed * (t - origin.t); }
};

/// First crossing after both lines exist, w1 starting left of w2. Parallel or
/// diverging lines give nothing.
std::optional<Point> meet(const Line& w1, const Line& w2,
                          double t_max = std::numeric_limits<double>::infinity());

/// Collision of two trajectories by bisection on the signed gap w2 - w1, scanning
/// from t_from with the given resolution.
std::optional<Point> meet(const Trajectory& w1, const Trajectory& w2, double t_from, double t_max,
                          double resolution = 1e-3);

struct IncomingFront {
  State left;
  State right;
  /// Strength at the interaction time (0 for classical shocks).
  double strength = 0.0;
};

/// Riemann data left behind by two colliding fronts, ordered left to right.
std::pair<State, DeltaState> post_interaction_data(const IncomingFront& w1, const IncomingFront& w2);

struct EngineOptions {
  PathOptions path;
  /// Throw EventCongestion instead of ordering coincident events by x.
  bool strict_congestion = false;
  std::size_t max_events = 10000;
  /// Maximum number of samples kept per curved trajectory in the timeline.
  std::size_t max_path_samples = 2000;
};

Timeline run_scenario(const Scenario& s, const EngineOptions& opts = {});

}  // namespace singshock
