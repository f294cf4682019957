#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "singshock/error.hpp"

namespace singshock {

struct RootOptions {
  double x_tol = 1e-12;
  int max_iter = 200;
};

/// Safeguarded Newton iteration on a bracket [lo, hi] with f(lo), f(hi) of
/// opposite sign (or zero). Falls back to bisection whenever a Newton step
/// leaves the current bracket.
template <class F, class DF>
double find_root(F&& f, DF&& df, double lo, double hi, RootOptions opts = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    fail(ErrorKind::ConvergenceFailure, "root is not bracketed");
  }
  if (flo > 0.0) {
    std::swap(lo, hi);
    std::swap(flo, fhi);
  }
  // Invariant: f(lo) < 0 < f(hi); lo may exceed hi.
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < opts.max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double width = std::abs(hi - lo);
    const double scale = std::max(1.0, std::abs(x));
    const double d = df(x);
    double next = 0.5 * (lo + hi);
    if (d != 0.0 && std::isfinite(d)) {
      const double newton = x - fx / d;
      const double a = std::min(lo, hi);
      const double b = std::max(lo, hi);
      if (newton > a && newton < b) next = newton;
    }
    const double step = std::abs(next - x);
    x = next;
    if (width <= opts.x_tol * scale || step <= 0.25 * opts.x_tol * scale) {
      return x;
    }
  }
  fail(ErrorKind::ConvergenceFailure,
       "no convergence after " + std::to_string(opts.max_iter) + " iterations");
}

/// Plain bisection for a sign change of f on [lo, hi]; returns the upper end of
/// the final bracket so the returned point is on the far side of the crossing.
template <class F>
double bisect_crossing(F&& f, double lo, double hi, double tol) {
  const bool lo_positive = f(lo) > 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace singshock
