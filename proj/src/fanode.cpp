#include "singshock/fanode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "singshock/curves.hpp"
#include "singshock/error.hpp"
#include "singshock/riemann.hpp"
#include "singshock/rootfind.hpp"
#include "singshock/singular.hpp"

namespace singshock {

namespace {

constexpr double kFanTol = 1e-12;

State clamped_fan_state(const FanDescriptor& fd, double xi) {
  const double lo = fd.xi_tail();
  const double hi = fd.xi_head();
  if (xi <= lo) return fd.tail;
  if (xi >= hi) return fd.head;
  return rarefaction_profile(fd.tail, fd.family, xi);
}

double deficiency(State left, State right, double c) {
  return c * jump(left.v, right.v) - jump(g_flux(left.u), g_flux(right.u));
}

// Right-hand side of the path system at one point, with the states it used.
struct Dynamics {
  double c = 0.0;
  double dbeta = 0.0;
  State left;
  State right;
  double xi = 0.0;
};

struct EventValue {
  PathEvent kind;
  double g;  // triggered when g > threshold
};

constexpr int kMaxEvents = 4;
using EventList = std::array<EventValue, kMaxEvents>;

template <class Rhs, class Events>
PathTrajectory integrate(Rhs&& rhs, Events&& events, Point start, double beta0,
                         const PathOptions& opts) {
  PathTrajectory out;
  const double h = 1.0 / opts.steps_per_unit_time;
  const double g_tol = 1e-12;

  auto sample_at = [&](double t, double x, double beta, const Dynamics& d) {
    return PathSample{t, x, d.c, beta, d.left, d.right};
  };

  double t = start.t;
  double x = start.x;
  double beta = beta0;
  Dynamics d = rhs(t, x, beta);
  out.samples.push_back(sample_at(t, x, beta, d));

  EventList g0 = events(t, x, beta, d);
  for (const EventValue& ev : g0) {
    if (ev.g > g_tol) {
      out.terminal = ev.kind;
      return out;
    }
  }

  struct Y {
    double x;
    double beta;
  };
  auto rk4 = [&](double t0, Y y, double dt) {
    const Dynamics k1 = rhs(t0, y.x, y.beta);
    const Dynamics k2 = rhs(t0 + dt / 2, y.x + dt / 2 * k1.c, y.beta + dt / 2 * k1.dbeta);
    const Dynamics k3 = rhs(t0 + dt / 2, y.x + dt / 2 * k2.c, y.beta + dt / 2 * k2.dbeta);
    const Dynamics k4 = rhs(t0 + dt, y.x + dt * k3.c, y.beta + dt * k3.dbeta);
    return Y{y.x + dt / 6 * (k1.c + 2 * k2.c + 2 * k3.c + k4.c),
             y.beta + dt / 6 * (k1.dbeta + 2 * k2.dbeta + 2 * k3.dbeta + k4.dbeta)};
  };

  constexpr std::size_t kMaxSteps = 20'000'000;
  for (std::size_t n = 0; n < kMaxSteps; ++n) {
    const double remaining = opts.t_end - t;
    if (remaining <= 1e-14 * std::max(1.0, std::abs(t))) {
      out.terminal = PathEvent::Completed;
      return out;
    }
    const double dt = std::min(h, remaining);
    const Y y0{x, beta};
    const Y y1 = rk4(t, y0, dt);
    const Dynamics d1 = rhs(t + dt, y1.x, y1.beta);
    const EventList g1 = events(t + dt, y1.x, y1.beta, d1);

    double first = dt;
    std::optional<PathEvent> hit;
    for (const EventValue& ev : g1) {
      if (ev.g <= g_tol) continue;
      auto triggered = [&](double theta) {
        const Y y = rk4(t, y0, theta);
        const Dynamics dd = rhs(t + theta, y.x, y.beta);
        for (const EventValue& e : events(t + theta, y.x, y.beta, dd)) {
          if (e.kind == ev.kind) return e.g > g_tol ? 1.0 : -1.0;
        }
        return -1.0;
      };
      const double theta = bisect_crossing(triggered, 0.0, dt, opts.event_tol);
      if (!hit || theta < first) {
        first = theta;
        hit = ev.kind;
      }
    }
    if (hit) {
      const Y ye = rk4(t, y0, first);
      const double be = *hit == PathEvent::Vanished ? 0.0 : std::max(0.0, ye.beta);
      const Dynamics de = rhs(t + first, ye.x, be);
      out.samples.push_back(sample_at(t + first, ye.x, be, de));
      out.terminal = *hit;
      return out;
    }
    t += dt;
    x = y1.x;
    beta = y1.beta;
    out.samples.push_back(sample_at(t, x, beta, d1));
  }
  fail(ErrorKind::ConvergenceFailure, "path integration did not terminate");
}

// Junction on R1 through `base` such that `right` lies on its D curve.
double sliding_junction(State base, State right) {
  auto f = [&](double m) {
    return rarefaction_v(base, m, Family::One) + (right.u - m) * (right.u + 1.0) - right.v;
  };
  auto df = [&](double m) { return m - right.u; };
  const double lo = std::max(base.u, right.u);
  if (f(lo) >= 0.0) return lo;
  double hi = lo + 1.0;
  while (f(hi) <= 0.0) hi = lo + 2.0 * (hi - lo);
  return find_root(f, df, lo, hi, {1e-14, 200});
}

}  // namespace

FanDescriptor make_fan(Family family, Point center, State tail, State head) {
  FanDescriptor fd{family, center, tail, head};
  if (fd.xi_head() < fd.xi_tail()) {
    fail(ErrorKind::InvalidInput, "fan head is slower than its tail");
  }
  const double v_head = rarefaction_v(tail, head.u, family);
  if (std::abs(v_head - head.v) > 1e-9 * std::max(1.0, std::abs(head.v))) {
    fail(ErrorKind::InvalidInput, "fan edge states are not on one rarefaction curve");
  }
  fd.head.v = v_head;
  return fd;
}

State fan_state(const FanDescriptor& fd, double xi) {
  if (xi < fd.xi_tail() - kFanTol || xi > fd.xi_head() + kFanTol) {
    fail(ErrorKind::OutsideFan, "ray slope " + std::to_string(xi) + " outside the fan");
  }
  if (xi <= fd.xi_tail()) return fd.tail;
  return rarefaction_profile(fd.tail, fd.family, std::min(xi, fd.xi_head()));
}

std::string_view path_event_name(PathEvent e) {
  switch (e) {
    case PathEvent::Completed: return "COMPLETED";
    case PathEvent::Vanished: return "VANISHED";
    case PathEvent::ExitedFan: return "EXITED_FAN";
    case PathEvent::ReachedD: return "REACHED_D";
    case PathEvent::ReachedE: return "REACHED_E";
    case PathEvent::OvercompressibilityLost: return "OVERCOMPRESSIBILITY_LOST";
  }
  return "?";
}

std::string_view crossing_outcome_name(CrossingOutcome o) {
  switch (o) {
    case CrossingOutcome::Exited: return "exited";
    case CrossingOutcome::ExitedSliding: return "exited_sliding";
    case CrossingOutcome::Vanished: return "vanished";
    case CrossingOutcome::Completed: return "completed";
    case CrossingOutcome::Unsupported: return "unsupported";
  }
  return "?";
}

PathTrajectory integrate_path(State left, const FanDescriptor& fd, Point start, double zeta,
                              const PathOptions& opts) {
  if (zeta < 0.0) fail(ErrorKind::InvalidInput, "negative strength");
  const double lam1_left = lambda(left, Family::One);
  auto rhs = [&](double t, double x, double) {
    Dynamics d;
    d.xi = (x - fd.center.x) / (t - fd.center.t);
    d.left = left;
    d.right = clamped_fan_state(fd, d.xi);
    d.c = shock_speed(left, d.right);
    d.dbeta = deficiency(left, d.right, d.c);
    return d;
  };
  const bool watch_e = fd.family == Family::One;
  auto events = [&](double, double, double beta, const Dynamics& d) {
    const double off = -1.0;
    return EventList{{
        {PathEvent::Vanished, -beta},
        {PathEvent::ExitedFan, opts.continue_past_head ? off : d.xi - fd.xi_head()},
        {PathEvent::ReachedD, d.c - lam1_left},
        {PathEvent::ReachedE, watch_e ? lambda(d.right, Family::Two) - d.c : off},
    }};
  };
  return integrate(rhs, events, start, zeta, opts);
}

PathTrajectory integrate_sliding_path(State left_base, const FanDescriptor& fd, Point start,
                                      double beta0, const PathOptions& opts) {
  auto rhs = [&](double t, double x, double) {
    Dynamics d;
    d.xi = (x - fd.center.x) / (t - fd.center.t);
    d.right = clamped_fan_state(fd, d.xi);
    const double m = sliding_junction(left_base, d.right);
    d.left = {m, rarefaction_v(left_base, m, Family::One)};
    d.c = std::abs(m - d.right.u) < 1e-14 ? lambda(d.left, Family::One)
                                          : shock_speed(d.left, d.right);
    d.dbeta = deficiency(d.left, d.right, d.c);
    return d;
  };
  auto events = [&](double, double, double beta, const Dynamics& d) {
    const double off = -1.0;
    return EventList{{
        {PathEvent::Vanished, -beta},
        {PathEvent::ExitedFan, opts.continue_past_head ? off : d.xi - fd.xi_head()},
        {PathEvent::OvercompressibilityLost, 2.0 - (d.left.u - d.right.u)},
        {PathEvent::Completed, off},
    }};
  };
  return integrate(rhs, events, start, beta0, opts);
}

double closed_form_c(State s0, State s1, double T, double t) {
  const double u0 = s0.u, v0 = s0.v, u1 = s1.u, v1 = s1.v;
  const double den = 2.0 * (u0 - 1.0);
  if (std::abs(den) < 1e-14) fail(ErrorKind::Pole, "closed-form speed has a pole at u0 = 1");
  return (t * (1.0 - 2.0 * (u1 - v0 + v1 + u0 * u0 - u1 * u1)) +
          T * (1.0 - 2.0 * (u0 - v1 - u0 * u1 + u0 * u0 - u1 * u1))) /
         den;
}

namespace {

bool has_decreasing_phase(const PathTrajectory& p) {
  for (std::size_t i = 1; i < p.samples.size(); ++i) {
    if (p.samples[i].beta < p.samples[i - 1].beta - 1e-13) return true;
  }
  return false;
}

// Ray of a 2-fan, ahead of xi_now, where the fan state meets the E curve of `left`.
std::optional<State> e_target(State left, const FanDescriptor& fd, double xi_now) {
  if (fd.family != Family::Two) return std::nullopt;
  auto h = [&](double xi) {
    const State r = clamped_fan_state(fd, xi);
    return lambda(r, Family::Two) - shock_speed(left, r);
  };
  const double lo = std::clamp(xi_now, fd.xi_tail(), fd.xi_head());
  const double hi = fd.xi_head();
  if (!(hi > lo) || h(hi) <= 0.0) return std::nullopt;
  const double xi = bisect_crossing([&](double s) { return h(s); }, lo, hi, 1e-13);
  return clamped_fan_state(fd, xi);
}

std::string regime_for_rate(double k, char positive, char zero, char negative) {
  if (k > kZeroRateTol) return std::string(1, positive);
  if (k < -kZeroRateTol) return std::string(1, negative);
  return std::string(1, zero);
}

}  // namespace

FanCrossing cross_fan(State left, const FanDescriptor& fd, Point start, double zeta,
                      const PathOptions& opts) {
  FanCrossing out;
  out.left_base = left;
  out.stages.push_back(integrate_path(left, fd, start, zeta, opts));
  out.had_decreasing_phase = has_decreasing_phase(out.stages.back());

  if (out.stages.back().terminal == PathEvent::ReachedD) {
    const PathSample& s = out.stages.back().back();
    out.stages.push_back(integrate_sliding_path(left, fd, {s.x, s.t}, s.beta, opts));
    out.had_decreasing_phase = out.had_decreasing_phase || has_decreasing_phase(out.stages.back());
  }

  const PathTrajectory& last = out.stages.back();
  const PathSample& e = last.back();
  const bool sliding = out.stages.size() == 2;
  switch (last.terminal) {
    case PathEvent::ExitedFan:
      out.k_after = growth_rate(e.left, fd.head);
      if (sliding) {
        out.outcome = CrossingOutcome::ExitedSliding;
        out.regime = regime_for_rate(out.k_after, 'b', 'e', 'g');
      } else {
        out.outcome = CrossingOutcome::Exited;
        out.regime = out.had_decreasing_phase || out.k_after < -kZeroRateTol ? "d" : "a";
      }
      break;
    case PathEvent::Vanished:
      out.outcome = CrossingOutcome::Vanished;
      out.regime = "d";
      break;
    case PathEvent::ReachedE:
    case PathEvent::OvercompressibilityLost:
      out.outcome = CrossingOutcome::Unsupported;
      break;
    case PathEvent::Completed:
    case PathEvent::ReachedD:
      out.outcome = CrossingOutcome::Completed;
      if (!sliding) {
        const double xi_now = (e.x - fd.center.x) / (e.t - fd.center.t);
        out.asymptotic_right = e_target(left, fd, xi_now);
        if (out.asymptotic_right) {
          out.k_after = growth_rate(left, *out.asymptotic_right);
          out.regime = regime_for_rate(out.k_after, 'c', 'f', 'g');
        }
      }
      break;
  }
  return out;
}

PathTrajectory reflect(const PathTrajectory& p) {
  PathTrajectory out;
  out.terminal = p.terminal;
  out.samples.reserve(p.samples.size());
  for (const PathSample& s : p.samples) {
    out.samples.push_back({s.t, -s.x, -s.c, s.beta, reflect(s.right), reflect(s.left)});
  }
  return out;
}

FanDescriptor reflect(const FanDescriptor& fd) {
  return {other(fd.family), {-fd.center.x, fd.center.t}, reflect(fd.head), reflect(fd.tail)};
}

}  // namespace singshock
