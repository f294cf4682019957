#include "singshock/fvoracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "singshock/error.hpp"

namespace singshock {

namespace {

constexpr double kBlowUp = 1e12;
constexpr std::size_t kWindowCells = 40;
constexpr std::size_t kBackgroundCells = 5;

// Neumaier compensated summation.
class Sum {
 public:
  void add(double x) {
    const double t = s_ + x;
    c_ += std::abs(s_) >= std::abs(x) ? (s_ - t) + x : (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

double integral(const std::vector<double>& q, double dx) {
  Sum s;
  for (double x : q) s.add(x);
  return s.value() * dx;
}

void initialise(const Scenario& sc, const Grid& g, std::vector<double>& u, std::vector<double>& v) {
  const double dx = g.dx();
  u.assign(g.cells, 0.0);
  v.assign(g.cells, 0.0);
  for (std::size_t j = 0; j < g.cells; ++j) {
    const double a = g.x_min + static_cast<double>(j) * dx;
    const double b = a + dx;
    // Exact cell average of the piecewise-constant data.
    double lo = a;
    double su = 0.0;
    double sv = 0.0;
    int pieces = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i <= sc.breakpoints.size(); ++i) {
      const double hi = i < sc.breakpoints.size() ? std::min(b, sc.breakpoints[i]) : b;
      if (hi > lo) {
        su += sc.states[i].u * (hi - lo);
        sv += sc.states[i].v * (hi - lo);
        lo = hi;
        ++pieces;
        last = i;
      }
    }
    if (pieces == 1) {
      u[j] = sc.states[last].u;
      v[j] = sc.states[last].v;
    } else {
      u[j] = su / dx;
      v[j] = sv / dx;
    }
  }
  for (std::size_t i = 0; i < sc.breakpoints.size(); ++i) {
    const double z = sc.delta_at(i);
    if (z == 0.0) continue;
    const double pos = (sc.breakpoints[i] - g.x_min) / dx;
    if (pos < 0.0 || pos > static_cast<double>(g.cells)) continue;
    const double k = std::floor(pos);
    const auto j = static_cast<std::size_t>(k);
    if (pos == k && j > 0 && j < g.cells) {
      v[j - 1] += 0.5 * z / dx;
      v[j] += 0.5 * z / dx;
    } else {
      v[std::min(j, g.cells - 1)] += z / dx;
    }
  }
}

void check(const std::vector<double>& q, double t, const char* name) {
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (!std::isfinite(q[j]) || std::abs(q[j]) > kBlowUp) {
      std::ostringstream os;
      os << name << " = " << q[j] << " in cell " << j << " at t=" << t;
      fail(ErrorKind::BlowUp, os.str());
    }
  }
}

}  // namespace

void validate(const Grid& g) {
  if (g.cells < 16) fail(ErrorKind::InvalidInput, "grid needs at least 16 cells");
  if (!(g.cfl > 0.0 && g.cfl < 1.0)) fail(ErrorKind::InvalidInput, "CFL number must lie in (0, 1)");
  if (!(std::isfinite(g.x_min) && std::isfinite(g.x_max) && g.x_min < g.x_max)) {
    fail(ErrorKind::InvalidInput, "grid needs finite x_min < x_max");
  }
}

std::vector<FieldSnapshot> run(const Scenario& initial, const Grid& grid, double t_end,
                               const std::vector<double>& snapshot_times) {
  validate(initial);
  validate(grid);
  if (!(t_end > 0.0) || !std::isfinite(t_end)) fail(ErrorKind::InvalidInput, "t_end must be positive");

  std::vector<double> times;
  for (double t : snapshot_times) {
    if (t > 0.0 && t < t_end) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  times.push_back(t_end);

  const std::size_t n = grid.cells;
  const double dx = grid.dx();
  std::vector<double> u;
  std::vector<double> v;
  initialise(initial, grid, u, v);

  Sum in_u;
  Sum in_v;
  auto snapshot = [&](double t) {
    FieldSnapshot s;
    s.t = t;
    s.x_min = grid.x_min;
    s.dx = dx;
    s.u = u;
    s.v = v;
    s.mass_u = integral(u, dx);
    s.mass_v = integral(v, dx);
    s.boundary_u = in_u.value();
    s.boundary_v = in_v.value();
    return s;
  };

  std::vector<FieldSnapshot> out;
  out.push_back(snapshot(0.0));

  std::vector<double> fu(n + 1);
  std::vector<double> fv(n + 1);
  double t = 0.0;
  for (double target : times) {
    while (t < target) {
      double speed = 0.0;
      for (double uj : u) speed = std::max(speed, std::abs(uj) + 1.0);
      double dt = grid.cfl * dx / speed;
      const bool last = t + dt >= target;
      if (last) dt = target - t;
      const double r = 0.5 * dx / dt;
      // Interface j sits between cells j-1 and j; ghosts copy the edge cells.
      for (std::size_t j = 0; j <= n; ++j) {
        const std::size_t l = j == 0 ? 0 : j - 1;
        const std::size_t rr = j == n ? n - 1 : j;
        const Flux a = flux({u[l], v[l]});
        const Flux b = flux({u[rr], v[rr]});
        fu[j] = 0.5 * (a.f1 + b.f1) - r * (u[rr] - u[l]);
        fv[j] = 0.5 * (a.f2 + b.f2) - r * (v[rr] - v[l]);
      }
      const double lam = dt / dx;
      for (std::size_t j = 0; j < n; ++j) {
        u[j] -= lam * (fu[j + 1] - fu[j]);
        v[j] -= lam * (fv[j + 1] - fv[j]);
      }
      in_u.add(dt * (fu[0] - fu[n]));
      in_v.add(dt * (fv[0] - fv[n]));
      t = last ? target : t + dt;
      check(u, t, "u");
      check(v, t, "v");
    }
    out.push_back(snapshot(t));
  }
  return out;
}

double conservation_defect(const std::vector<FieldSnapshot>& snaps) {
  if (snaps.empty()) return 0.0;
  const FieldSnapshot& s0 = snaps.front();
  double worst = 0.0;
  for (const FieldSnapshot& s : snaps) {
    const double du = s.mass_u - s0.mass_u - (s.boundary_u - s0.boundary_u);
    const double dv = s.mass_v - s0.mass_v - (s.boundary_v - s0.boundary_v);
    const double su = std::max({1.0, std::abs(s0.mass_u), std::abs(s.mass_u)});
    const double sv = std::max({1.0, std::abs(s0.mass_v), std::abs(s.mass_v)});
    worst = std::max({worst, std::abs(du) / su, std::abs(dv) / sv});
  }
  return worst;
}

double default_window(const FieldSnapshot& snap) { return static_cast<double>(kWindowCells) * snap.dx; }

namespace {

double mean(const std::vector<double>& q, std::size_t first, std::size_t count) {
  double s = 0.0;
  for (std::size_t j = first; j < first + count; ++j) s += q[j];
  return s / static_cast<double>(count);
}

}  // namespace

namespace {

// Interface after the cell with the largest jump in u.
std::size_t steepest_interface(const FieldSnapshot& snap) {
  const std::size_t n = snap.u.size();
  if (n < 2) fail(ErrorKind::NoFront, "snapshot has fewer than two cells");
  std::size_t best = 0;
  double jump = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double d = std::abs(snap.u[j + 1] - snap.u[j]);
    if (d > jump) {
      jump = d;
      best = j;
    }
  }
  if (jump < 1e-6) fail(ErrorKind::NoFront, "largest jump in u is below 1e-6");
  return best + 1;
}

double interface_x(const FieldSnapshot& snap, std::size_t iface) {
  return snap.x_min + static_cast<double>(iface) * snap.dx;
}

// Centroid of the v excess near the front; the smeared point mass trails the
// u jump by a few cells.
double mass_centroid(const FieldSnapshot& snap, std::size_t iface) {
  const std::size_t n = snap.v.size();
  const double x_iface = interface_x(snap, iface);
  const std::size_t lo = iface > kWindowCells ? iface - kWindowCells : 0;
  const std::size_t hi = std::min(n, iface + kWindowCells);
  if (lo < kBackgroundCells || hi + kBackgroundCells > n) return x_iface;
  const double vl = mean(snap.v, lo - kBackgroundCells, kBackgroundCells);
  const double vr = mean(snap.v, hi, kBackgroundCells);
  double w = 0.0;
  double wx = 0.0;
  for (std::size_t j = lo; j < hi; ++j) {
    const double e = snap.v[j] - (j < iface ? vl : vr);
    w += e;
    wx += e * snap.center(j);
  }
  if (!(w * snap.dx > 1e-3)) return x_iface;
  const double xc = wx / w;
  const double half = static_cast<double>(kWindowCells) * snap.dx;
  return std::abs(xc - x_iface) <= half ? xc : x_iface;
}

}  // namespace

double measure_shock_position(const FieldSnapshot& snap) {
  const std::size_t n = snap.u.size();
  const std::size_t iface = steepest_interface(snap);
  const double x_iface = interface_x(snap, iface);
  const std::size_t lo = iface > kWindowCells ? iface - kWindowCells : 0;
  const std::size_t hi = std::min(n, iface + kWindowCells);
  if (lo < kBackgroundCells || hi + kBackgroundCells > n) return x_iface;
  // u carries no point mass and the scheme conserves it exactly, so the point
  // where its window integral balances the two background states is the front.
  const double ul = mean(snap.u, lo - kBackgroundCells, kBackgroundCells);
  const double ur = mean(snap.u, hi, kBackgroundCells);
  if (std::abs(ul - ur) <= 1e-6) return x_iface;
  Sum su;
  for (std::size_t j = lo; j < hi; ++j) su.add(snap.u[j]);
  const double a = snap.x_min + static_cast<double>(lo) * snap.dx;
  const double b = snap.x_min + static_cast<double>(hi) * snap.dx;
  return std::clamp((su.value() * snap.dx + ul * a - ur * b) / (ul - ur), a, b);
}

double measure_delta_mass(const FieldSnapshot& snap, double window_halfwidth, double center) {
  const std::size_t n = snap.v.size();
  const double pl = std::round((center - window_halfwidth - snap.x_min) / snap.dx);
  const double pr = std::round((center + window_halfwidth - snap.x_min) / snap.dx);
  if (pl < static_cast<double>(kBackgroundCells) || pr + static_cast<double>(kBackgroundCells) > static_cast<double>(n) ||
      !(pr > pl)) {
    std::ostringstream os;
    os << "window [" << center - window_halfwidth << ", " << center + window_halfwidth
       << "] leaves the domain";
    fail(ErrorKind::WindowClipped, os.str());
  }
  const auto jl = static_cast<std::size_t>(pl);
  const auto jr = static_cast<std::size_t>(pr);
  const double a = snap.x_min + pl * snap.dx;
  const double b = snap.x_min + pr * snap.dx;
  const double ul = mean(snap.u, jl - kBackgroundCells, kBackgroundCells);
  const double ur = mean(snap.u, jr, kBackgroundCells);
  const double vl = mean(snap.v, jl - kBackgroundCells, kBackgroundCells);
  const double vr = mean(snap.v, jr, kBackgroundCells);
  Sum su;
  Sum sv;
  for (std::size_t j = jl; j < jr; ++j) {
    su.add(snap.u[j]);
    sv.add(snap.v[j]);
  }
  // u carries no point mass, so its balance over the window fixes where the
  // background switches from the left state to the right one.
  double c = std::clamp(center, a, b);
  if (std::abs(ul - ur) > 1e-6) c = std::clamp((su.value() * snap.dx + ul * a - ur * b) / (ul - ur), a, b);
  return sv.value() * snap.dx - vl * (c - a) - vr * (b - c);
}

double measure_delta_mass(const FieldSnapshot& snap, double window_halfwidth) {
  return measure_delta_mass(snap, window_halfwidth, mass_centroid(snap, steepest_interface(snap)));
}

LinearFit fit_line(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2) fail(ErrorKind::InvalidInput, "fit needs two or more points");
  const double n = static_cast<double>(t.size());
  double st = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
  }
  const double mt = st / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sxx += (t[i] - mt) * (t[i] - mt);
    sxy += (t[i] - mt) * (y[i] - my);
  }
  if (sxx == 0.0) fail(ErrorKind::InvalidInput, "fit needs distinct abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mt};
}

}  // namespace singshock
