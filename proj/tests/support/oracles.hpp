#pragma once

// Reference computations written independently of the library: they work from
// the conservation law and jump conditions directly instead of the closed forms.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

namespace oracle {

struct UV {
  double u;
  double v;
};

inline UV flux(UV q) { return {q.u * q.u - q.v, q.u * q.u * q.u / 3.0 - q.u}; }

/// Eigenvalues of the central-difference Jacobian of the flux.
inline std::array<double, 2> numeric_eigenvalues(UV q, double h = 1e-6) {
  const UV fu_p = flux({q.u + h, q.v});
  const UV fu_m = flux({q.u - h, q.v});
  const UV fv_p = flux({q.u, q.v + h});
  const UV fv_m = flux({q.u, q.v - h});
  const double a = (fu_p.u - fu_m.u) / (2 * h);
  const double b = (fv_p.u - fv_m.u) / (2 * h);
  const double c = (fu_p.v - fu_m.v) / (2 * h);
  const double d = (fv_p.v - fv_m.v) / (2 * h);
  const double tr = a + d;
  const double det = a * d - b * c;
  const double disc = std::sqrt(tr * tr / 4 - det);
  return {tr / 2 - disc, tr / 2 + disc};
}

/// Both v with (u0,v0)->(u,v) satisfying the two jump conditions: eliminating
/// c gives w^2 - [u^2] w + [g][u] = 0 for w = v - v0. Returns {lower, upper}.
inline std::array<double, 2> hugoniot_pair(UV base, double u) {
  const double du = u - base.u;
  const double a = u * u - base.u * base.u;
  const double dg = (u * u * u / 3 - u) - (base.u * base.u * base.u / 3 - base.u);
  const double disc = a * a - 4 * dg * du;
  const double s = std::sqrt(std::max(0.0, disc));
  const double w1 = (a - s) / 2;
  const double w2 = (a + s) / 2;
  return {base.v + std::min(w1, w2), base.v + std::max(w1, w2)};
}

/// Speed from the first jump condition.
inline double speed(UV l, UV r) { return ((r.u * r.u - r.v) - (l.u * l.u - l.v)) / (r.u - l.u); }

/// Mass production rate c[v] - [g] of a jump moving at c.
inline double deficiency(UV l, UV r, double c) {
  const UV fl = flux(l);
  const UV fr = flux(r);
  return c * (r.v - l.v) - (fr.v - fl.v);
}

inline double residual_u(UV l, UV r, double c) {
  const UV fl = flux(l);
  const UV fr = flux(r);
  return c * (r.u - l.u) - (fr.u - fl.u);
}

/// v on the integral curve of family i through base, by integrating
/// dv/du = 2u - lambda_i(u) with Simpson's rule.
inline double integral_curve(UV base, double u, int family, int n = 64) {
  auto slope = [family](double x) { return 2 * x - (family == 1 ? x - 1 : x + 1); };
  const double h = (u - base.u) / n;
  double s = slope(base.u) + slope(u);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * slope(base.u + i * h);
  return base.v + s * h / 3;
}

/// Shares (a0, a1) solving a0 + a1 = 1, u1 a0 + u0 a1 = c by Cramer's rule.
inline std::array<double, 2> split(UV l, UV r, double c) {
  const double det = l.u - r.u;
  return {(l.u - c) / det, (c - r.u) / det};
}

/// State at ray slope xi inside a fan with the given tail: lambda_i(u) = xi,
/// v from the integral curve.
inline UV fan_state(UV tail, int family, double xi) {
  const double u = family == 1 ? xi + 1 : xi - 1;
  return {u, integral_curve(tail, u, family)};
}

struct PathEnd {
  double t;
  double x;
  double beta;
};

/// Singular front with constant left state through a centred fan, integrated
/// with the explicit midpoint rule on a fine grid until t_end.
inline PathEnd midpoint_path(UV left, int family, UV tail, double xc, double tc, double x0, double t0, double beta0,
                             double t_end, int steps) {
  auto rhs = [&](double t, double x, double& dx, double& db) {
    const UV r = fan_state(tail, family, (x - xc) / (t - tc));
    const double c = speed(left, r);
    dx = c;
    db = deficiency(left, r, c);
  };
  const double h = (t_end - t0) / steps;
  double x = x0;
  double b = beta0;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    double k1x, k1b, k2x, k2b;
    rhs(t, x, k1x, k1b);
    rhs(t + h / 2, x + h / 2 * k1x, k2x, k2b);
    x += h * k2x;
    b += h * k2b;
    t = t0 + (i + 1) * h;
  }
  return {t, x, b};
}

/// Seed for property tests: SINGSHOCK_SEED if set, otherwise fixed.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("SINGSHOCK_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611ULL;
}

class Rng {
 public:
  explicit Rng(std::uint64_t salt) : gen_(seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oracle
