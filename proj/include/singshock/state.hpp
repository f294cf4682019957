#pragma once

#include <cmath>

namespace singshock {

/// Point of phase space.
struct State {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

struct Flux {
  double f1 = 0.0;
  double f2 = 0.0;
};

/// Constant state carrying a point mass of strength `zeta` in v.
struct DeltaState {
  State state;
  double zeta = 0.0;
};

struct Eigenvalues {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct Point {
  double x = 0.0;
  double t = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Family { One = 1, Two = 2 };

constexpr int family_index(Family f) { return static_cast<int>(f); }

/// Second flux component u^3/3 - u.
constexpr double g_flux(double u) { return u * u * u / 3.0 - u; }

constexpr Flux flux(State s) { return {s.u * s.u - s.v, g_flux(s.u)}; }

constexpr Eigenvalues eigenvalues(State s) { return {s.u - 1.0, s.u + 1.0}; }

constexpr double lambda(State s, Family f) {
  return f == Family::One ? s.u - 1.0 : s.u + 1.0;
}

/// [q] = q_right - q_left.
constexpr double jump(double q_left, double q_right) { return q_right - q_left; }

inline bool is_finite(State s) { return std::isfinite(s.u) && std::isfinite(s.v); }

/// Image under the symmetry (x, u, v) -> (-x, -u, v). Swaps the two families.
constexpr State reflect(State s) { return {-s.u, s.v}; }

constexpr Family other(Family f) { return f == Family::One ? Family::Two : Family::One; }

}  // namespace singshock
