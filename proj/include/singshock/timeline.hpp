#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "singshock/state.hpp"

namespace singshock {

enum class TrajectoryKind { Shock, Singular, FanEdge };

std::string_view trajectory_kind_name(TrajectoryKind k);
std::optional<TrajectoryKind> parse_trajectory_kind(std::string_view s);

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  /// dx/dt at the sample.
  double c = 0.0;
  double beta = 0.0;
  State left;
  State right;

  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

/// A front in the x-t plane. Straight fronts carry two samples; curved paths
/// carry many and are interpolated with cubic Hermite segments.
struct Trajectory {
  int id = 0;
  TrajectoryKind kind = TrajectoryKind::Shock;
  /// 1 or 2 for classical shocks and fan edges, 0 for singular shocks.
  int family = 0;
  std::vector<TrajectorySample> samples;
  int start_event = -1;
  int end_event = -1;

  double t_begin() const { return samples.front().t; }
  double t_end() const { return samples.back().t; }
  double position(double t) const;
  double strength(double t) const;
  /// Sample index i with samples[i].t <= t < samples[i+1].t (clamped).
  std::size_t segment(double t) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

enum class EventKind {
  Interaction,
  FanEntry,
  ReachedD,
  FanExit,
  Vanish,
  Collapse,
};

std::string_view event_kind_name(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

struct Event {
  int id = 0;
  EventKind kind = EventKind::Interaction;
  double x = 0.0;
  double t = 0.0;
  /// Strength carried into the outgoing waves.
  double zeta = 0.0;
  std::vector<int> incoming;
  std::vector<int> outgoing;
  /// Outcome label 'a'..'g' for fan crossings, empty otherwise.
  std::string regime;
  bool approximate = false;
  std::string note;

  friend bool operator==(const Event&, const Event&) = default;
};

enum class PatchKind { Constant, Fan, SimpleWave };

std::string_view patch_kind_name(PatchKind k);
std::optional<PatchKind> parse_patch_kind(std::string_view s);

/// Region between two trajectories during one epoch. left_traj / right_traj
/// are -1 for the unbounded ends.
struct Patch {
  PatchKind kind = PatchKind::Constant;
  int left_traj = -1;
  int right_traj = -1;
  /// Constant: the state. Fan: the tail state. SimpleWave: the state far from the path.
  State state;
  int family = 0;
  /// Fan centre.
  Point center;
  /// SimpleWave: trajectory whose samples carry the states shed by the path,
  /// and whether the wave lies on the path's left.
  int path_traj = -1;
  bool path_on_right = true;

  friend bool operator==(const Patch&, const Patch&) = default;
};

struct Epoch {
  double t_begin = 0.0;
  double t_end = 0.0;
  std::vector<Patch> patches;

  friend bool operator==(const Epoch&, const Epoch&) = default;
};

struct Timeline {
  double t_max = 0.0;
  std::vector<Trajectory> trajectories;
  std::vector<Event> events;
  std::vector<Epoch> epochs;

  /// Regime labels of fan crossings in event order.
  std::vector<std::string> regime_sequence() const;
  /// Solution value at (x, t); point masses are not represented.
  State sample(double x, double t) const;

  friend bool operator==(const Timeline&, const Timeline&) = default;
};

}  // namespace singshock
