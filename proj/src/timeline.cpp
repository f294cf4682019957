#include "singshock/timeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "singshock/curves.hpp"
#include "singshock/error.hpp"
#include "singshock/riemann.hpp"

namespace singshock {

namespace {

template <class E, std::size_t N>
std::optional<E> parse_name(std::string_view s, const std::array<std::pair<E, std::string_view>, N>& table) {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  return std::nullopt;
}

template <class E, std::size_t N>
std::string_view lookup_name(E e, const std::array<std::pair<E, std::string_view>, N>& table) {
  for (const auto& [k, name] : table) {
    if (k == e) return name;
  }
  return "?";
}

constexpr std::array<std::pair<TrajectoryKind, std::string_view>, 3> kTrajectoryNames{{
    {TrajectoryKind::Shock, "shock"},
    {TrajectoryKind::Singular, "singular"},
    {TrajectoryKind::FanEdge, "fan_edge"},
}};

constexpr std::array<std::pair<EventKind, std::string_view>, 6> kEventNames{{
    {EventKind::Interaction, "interaction"},
    {EventKind::FanEntry, "fan_entry"},
    {EventKind::ReachedD, "reached_d"},
    {EventKind::FanExit, "fan_exit"},
    {EventKind::Vanish, "vanish"},
    {EventKind::Collapse, "collapse"},
}};

constexpr std::array<std::pair<PatchKind, std::string_view>, 3> kPatchNames{{
    {PatchKind::Constant, "constant"},
    {PatchKind::Fan, "fan"},
    {PatchKind::SimpleWave, "simple_wave"},
}};

}  // namespace

std::string_view trajectory_kind_name(TrajectoryKind k) { return lookup_name(k, kTrajectoryNames); }
std::optional<TrajectoryKind> parse_trajectory_kind(std::string_view s) {
  return parse_name(s, kTrajectoryNames);
}
std::string_view event_kind_name(EventKind k) { return lookup_name(k, kEventNames); }
std::optional<EventKind> parse_event_kind(std::string_view s) { return parse_name(s, kEventNames); }
std::string_view patch_kind_name(PatchKind k) { return lookup_name(k, kPatchNames); }
std::optional<PatchKind> parse_patch_kind(std::string_view s) { return parse_name(s, kPatchNames); }

std::size_t Trajectory::segment(double t) const {
  if (samples.size() < 2) return 0;
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double tt, const TrajectorySample& s) { return tt < s.t; });
  std::size_t i = it == samples.begin() ? 0 : static_cast<std::size_t>(it - samples.begin()) - 1;
  return std::min(i, samples.size() - 2);
}

double Trajectory::position(double t) const {
  if (samples.size() == 1) return samples.front().x + samples.front().c * (t - samples.front().t);
  if (t <= samples.front().t) return samples.front().x + samples.front().c * (t - samples.front().t);
  if (t >= samples.back().t) return samples.back().x + samples.back().c * (t - samples.back().t);
  const std::size_t i = segment(t);
  const TrajectorySample& a = samples[i];
  const TrajectorySample& b = samples[i + 1];
  const double h = b.t - a.t;
  if (h <= 0.0) return a.x;
  const double s = (t - a.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * a.x + (s3 - 2 * s2 + s) * h * a.c + (-2 * s3 + 3 * s2) * b.x +
         (s3 - s2) * h * b.c;
}

double Trajectory::strength(double t) const {
  if (kind != TrajectoryKind::Singular) return 0.0;
  if (samples.size() == 1 || t <= samples.front().t) return samples.front().beta;
  if (t >= samples.back().t) return samples.back().beta;
  const std::size_t i = segment(t);
  const TrajectorySample& a = samples[i];
  const TrajectorySample& b = samples[i + 1];
  const double h = b.t - a.t;
  if (h <= 0.0) return a.beta;
  return a.beta + (b.beta - a.beta) * (t - a.t) / h;
}

std::vector<std::string> Timeline::regime_sequence() const {
  std::vector<std::string> out;
  for (const Event& e : events) {
    if (!e.regime.empty()) out.push_back(e.regime);
  }
  return out;
}

namespace {

State simple_wave_state(const Patch& p, const Trajectory& path, double x, double t) {
  // Characteristics leave the path tangentially: find the emission time s with
  // x = x(s) + lambda(W(s)) (t - s), W being the state shed on the wave side.
  const Family fam = p.family == 1 ? Family::One : Family::Two;
  auto shed = [&](std::size_t i) {
    return p.path_on_right ? path.samples[i].left : path.samples[i].right;
  };
  const std::size_t n = path.samples.size();
  std::size_t last = n - 1;
  while (last > 0 && path.samples[last].t > t) --last;
  auto h = [&](std::size_t i) {
    const TrajectorySample& s = path.samples[i];
    return s.x + lambda(shed(i), fam) * (t - s.t) - x;
  };
  const double h0 = h(0);
  const double h1 = h(last);
  if ((h0 > 0.0) == (h1 > 0.0)) {
    // Beyond the last emitted characteristic the state is the final shed state.
    return std::abs(h0) < std::abs(h1) ? shed(0) : shed(last);
  }
  std::size_t lo = 0;
  std::size_t hi = last;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if ((h(mid) > 0.0) == (h0 > 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double a = h(lo);
  const double b = h(hi);
  const double w = a == b ? 0.0 : a / (a - b);
  const State sa = shed(lo);
  const State sb = shed(hi);
  const double u = sa.u + w * (sb.u - sa.u);
  // Shed states lie on one integral curve through the far state.
  return {u, rarefaction_v(p.state, u, fam)};
}

}  // namespace

State Timeline::sample(double x, double t) const {
  if (epochs.empty()) fail(ErrorKind::InvalidInput, "empty timeline");
  const Epoch* ep = &epochs.back();
  for (const Epoch& e : epochs) {
    if (t >= e.t_begin && t <= e.t_end) {
      ep = &e;
      break;
    }
  }
  auto pos = [&](int id, double fallback) {
    return id < 0 ? fallback : trajectories[static_cast<std::size_t>(id)].position(t);
  };
  const double inf = std::numeric_limits<double>::infinity();
  const Patch* nearest = nullptr;
  double best = inf;
  for (const Patch& p : ep->patches) {
    const double xl = pos(p.left_traj, -inf);
    const double xr = pos(p.right_traj, inf);
    const double d = x < xl ? xl - x : (x > xr ? x - xr : 0.0);
    if (d < best) {
      best = d;
      nearest = &p;
    }
    if (d == 0.0) break;
  }
  if (nearest == nullptr) fail(ErrorKind::InvalidInput, "epoch without patches");
  const Patch& p = *nearest;
  switch (p.kind) {
    case PatchKind::Constant:
      return p.state;
    case PatchKind::Fan: {
      const Family fam = p.family == 1 ? Family::One : Family::Two;
      const double xi = std::max((x - p.center.x) / (t - p.center.t), lambda(p.state, fam));
      return rarefaction_profile(p.state, fam, xi);
    }
    case PatchKind::SimpleWave:
      return simple_wave_state(p, trajectories[static_cast<std::size_t>(p.path_traj)], x, t);
  }
  return p.state;
}

}  // namespace singshock
