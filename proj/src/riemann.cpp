#include "singshock/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "singshock/curves.hpp"
#include "singshock/error.hpp"
#include "singshock/rootfind.hpp"

namespace singshock {

namespace {

constexpr double kDropTol = 1e-10;
constexpr double kLaxSlack = 1e-10;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Forward 1-wave curve from `left`, parametrised by u.
double wave1_v(State left, double u) {
  return u >= left.u ? rarefaction_v(left, u, Family::One) : hugoniot_v(left, u, Branch::Plus);
}

double wave1_slope(State left, double u) {
  return u >= left.u ? rarefaction_slope(u, Family::One)
                     : hugoniot_slope(left, u, Branch::Plus);
}

// Left states that reach `right` through a single 2-wave.
double wave2_back_v(State right, double u) {
  return u <= right.u ? inverse_rarefaction_v(right, u, Family::Two)
                      : hugoniot_v(right, u, Branch::Minus);
}

double wave2_back_slope(State right, double u) {
  return u <= right.u ? rarefaction_slope(u, Family::Two)
                      : hugoniot_slope(right, u, Branch::Minus);
}

Wave classical_wave(State a, State b, Family expected) {
  if (b.u > a.u) return RarefactionWave{expected, a, b};
  const double c = shock_speed(a, b);
  return ShockWave{lax_family(a, b, c).value_or(expected), a, b, c};
}

WaveFan single_singular(State left, State right, double zeta, Point origin) {
  WaveFan fan{left, right, origin, {}};
  fan.waves.emplace_back(make_singular_shock(left, right, zeta, origin));
  return fan;
}

}  // namespace

double trailing_speed(const Wave& w) {
  return std::visit(overloaded{
                        [](const ShockWave& s) { return s.speed; },
                        [](const RarefactionWave& r) { return r.tail_speed(); },
                        [](const SingularShock& s) { return s.speed; },
                    },
                    w);
}

double leading_speed(const Wave& w) {
  return std::visit(overloaded{
                        [](const ShockWave& s) { return s.speed; },
                        [](const RarefactionWave& r) { return r.head_speed(); },
                        [](const SingularShock& s) { return s.speed; },
                    },
                    w);
}

State left_state(const Wave& w) {
  return std::visit([](const auto& x) { return x.left; }, w);
}

State right_state(const Wave& w) {
  return std::visit([](const auto& x) { return x.right; }, w);
}

State rarefaction_profile(State tail, Family family, double xi) {
  const double u = family == Family::One ? xi + 1.0 : xi - 1.0;
  return {u, rarefaction_v(tail, u, family)};
}

State WaveFan::sample(double x, double t) const {
  const double xi = (x - origin.x) / (t - origin.t);
  State current = left;
  for (const Wave& w : waves) {
    if (xi < trailing_speed(w)) return current;
    if (const auto* r = std::get_if<RarefactionWave>(&w)) {
      if (xi < r->head_speed()) return rarefaction_profile(r->left, r->family, xi);
    }
    current = right_state(w);
  }
  return current;
}

std::vector<State> WaveFan::states() const {
  std::vector<State> out{left};
  for (const Wave& w : waves) out.push_back(right_state(w));
  if (waves.empty()) out.push_back(right);
  return out;
}

std::optional<Family> lax_family(State left, State right, double c) {
  const double s = kLaxSlack * std::max(1.0, std::abs(c));
  const bool one = lambda(right, Family::One) <= c + s && c <= lambda(left, Family::One) + s &&
                   c <= lambda(right, Family::Two) + s;
  const bool two = lambda(right, Family::Two) <= c + s && c <= lambda(left, Family::Two) + s &&
                   c >= lambda(left, Family::One) - s;
  if (one && !two) return Family::One;
  if (two && !one) return Family::Two;
  return std::nullopt;
}

bool is_lax_admissible(const ShockWave& s) {
  return lax_family(s.left, s.right, s.speed) == s.family;
}

WaveFan solve_classical(State left, State right, Point origin) {
  WaveFan fan{left, right, origin, {}};
  if (left == right) return fan;

  const double lo = left.u - 3.0;
  const double hi = right.u + 3.0;
  if (lo > hi) fail(ErrorKind::NoClassicalSolution, "wave curves do not overlap in u");

  auto f = [&](double m) { return wave1_v(left, m) - wave2_back_v(right, m); };
  auto df = [&](double m) { return wave1_slope(left, m) - wave2_back_slope(right, m); };
  const double scale = std::max({1.0, std::abs(left.v), std::abs(right.v)});
  const double flo = f(lo);
  const double fhi = f(hi);
  double m;
  if (std::abs(flo) <= 1e-12 * scale) {
    m = lo;
  } else if (std::abs(fhi) <= 1e-12 * scale) {
    m = hi;
  } else if ((flo > 0.0) == (fhi > 0.0)) {
    fail(ErrorKind::NoClassicalSolution, "no intersection of the forward 1-curve and backward 2-curve");
  } else {
    m = find_root(f, df, lo, hi, {1e-14, 200});
  }

  const double residual = std::abs(f(m));
  if (residual > 1e-9 * scale) {
    fail(ErrorKind::ConvergenceFailure, "middle state mismatch " + std::to_string(residual));
  }

  const double tol = kDropTol * std::max(1.0, std::abs(m));
  const bool drop1 = std::abs(m - left.u) <= tol;
  const bool drop2 = std::abs(m - right.u) <= tol;
  if (drop1 && drop2) return fan;
  if (drop1) {
    fan.waves.push_back(classical_wave(left, right, Family::Two));
  } else if (drop2) {
    fan.waves.push_back(classical_wave(left, right, Family::One));
  } else {
    const State mid{m, wave1_v(left, m)};
    fan.waves.push_back(classical_wave(left, mid, Family::One));
    fan.waves.push_back(classical_wave(mid, right, Family::Two));
  }
  return fan;
}

std::optional<State> rarefaction_singular_junction(State left, State right, double min_gap) {
  // Middle state on R1 through `left` with `right` on the D curve of the middle state.
  auto f = [&](double m) {
    return rarefaction_v(left, m, Family::One) + (right.u - m) * (right.u + 1.0) - right.v;
  };
  auto df = [&](double m) { return m - right.u; };
  const double lo = std::max(left.u, right.u + min_gap);
  if (f(lo) > 0.0) return std::nullopt;
  double hi = lo + 1.0;
  while (f(hi) <= 0.0) {
    hi = lo + 2.0 * (hi - lo);
    if (hi - lo > 1e8) return std::nullopt;
  }
  const double m = find_root(f, df, lo, hi, {1e-14, 200});
  return State{m, rarefaction_v(left, m, Family::One)};
}

std::optional<State> singular_rarefaction_junction(State left, State right, double min_gap) {
  // Middle state on E of `left` from which R2 reaches `right`.
  auto f = [&](double m) {
    return curve_E_v(left, m) + (right.u * right.u - m * m) / 2.0 - right.u + m - right.v;
  };
  auto df = [&](double m) { return left.u - m; };
  const double hi = std::min(right.u, left.u - min_gap);
  if (f(hi) < 0.0) return std::nullopt;
  double lo = hi - 1.0;
  while (f(lo) >= 0.0) {
    lo = hi - 2.0 * (hi - lo);
    if (hi - lo > 1e8) return std::nullopt;
  }
  const double m = find_root(f, df, lo, hi, {1e-14, 200});
  return State{m, curve_E_v(left, m)};
}

namespace {

std::optional<WaveFan> composite(State left, State right, double zeta, Point origin,
                                 double min_gap, bool rarefaction_first) {
  WaveFan fan{left, right, origin, {}};
  if (rarefaction_first) {
    const auto mid = rarefaction_singular_junction(left, right, min_gap);
    if (!mid) return std::nullopt;
    if (std::abs(mid->u - left.u) > kDropTol) {
      fan.waves.emplace_back(RarefactionWave{Family::One, left, *mid});
    }
    fan.waves.emplace_back(make_singular_shock(*mid, right, zeta, origin));
  } else {
    const auto mid = singular_rarefaction_junction(left, right, min_gap);
    if (!mid) return std::nullopt;
    fan.waves.emplace_back(make_singular_shock(left, *mid, zeta, origin));
    if (std::abs(right.u - mid->u) > kDropTol) {
      fan.waves.emplace_back(RarefactionWave{Family::Two, *mid, right});
    }
  }
  return fan;
}

}  // namespace

WaveFan solve(State left, State right, Point origin) {
  const Region region = classify(left, right);
  switch (region) {
    case Region::Q7:
    case Region::OnJ1:
      return single_singular(left, right, 0.0, origin);
    case Region::AboveD:
      if (auto fan = composite(left, right, 0.0, origin, 3.0, true)) return *fan;
      fail(ErrorKind::Unresolvable, "no admissible 1-rarefaction + singular shock");
    case Region::BelowE:
      if (auto fan = composite(left, right, 0.0, origin, 3.0, false)) return *fan;
      fail(ErrorKind::Unresolvable, "no admissible singular shock + 2-rarefaction");
    default:
      break;
  }
  try {
    return solve_classical(left, right, origin);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoClassicalSolution) throw;
  }
  const bool above = right.v > curve_D_v(left, right.u);
  if (auto fan = composite(left, right, 0.0, origin, 3.0, above)) return *fan;
  if (auto fan = composite(left, right, 0.0, origin, 3.0, !above)) return *fan;
  fail(ErrorKind::Unresolvable,
       "no classical or singular construction for region " + std::string(region_name(region)));
}

WaveFan solve_with_delta(State left, DeltaState right, Point origin) {
  if (right.zeta < 0.0) fail(ErrorKind::InvalidInput, "negative delta strength");
  const State r = right.state;
  const Region region = classify(left, r);
  switch (region) {
    case Region::AboveD:
      if (auto fan = composite(left, r, right.zeta, origin, 2.0, true)) return *fan;
      fail(ErrorKind::Unresolvable, "no overcompressive 1-rarefaction + singular shock");
    case Region::BelowE:
      if (auto fan = composite(left, r, right.zeta, origin, 2.0, false)) return *fan;
      fail(ErrorKind::Unresolvable, "no overcompressive singular shock + 2-rarefaction");
    case Region::Classical:
      fail(ErrorKind::OutsideSDSL, "right state outside the delta singular locus");
    default:
      return single_singular(left, r, right.zeta, origin);
  }
}

WaveFan resolve(State left, DeltaState right, Point at) {
  if (right.zeta > 0.0) return solve_with_delta(left, right, at);
  return solve(left, right.state, at);
}

WaveFan decompose(const SingularShock& ss) {
  const auto t1 = vanish_time(ss);
  const double t = t1 ? *t1 : ss.birth.t;
  WaveFan fan = solve_classical(ss.left, ss.right, {ss.position(t), t});
  const bool ok = fan.waves.size() == 2 && std::all_of(fan.waves.begin(), fan.waves.end(), [](const Wave& w) {
                    const auto* s = std::get_if<ShockWave>(&w);
                    return s != nullptr && is_lax_admissible(*s);
                  });
  if (!ok) {
    fail(ErrorKind::ExpectedTwoShocks, "vanishing singular shock did not split into two Lax shocks");
  }
  return fan;
}

Wave reflect(const Wave& w) {
  return std::visit(
      overloaded{
          [](const ShockWave& s) -> Wave {
            return ShockWave{other(s.family), reflect(s.right), reflect(s.left), -s.speed};
          },
          [](const RarefactionWave& r) -> Wave {
            return RarefactionWave{other(r.family), reflect(r.right), reflect(r.left)};
          },
          [](const SingularShock& s) -> Wave {
            SingularShock m = s;
            m.left = reflect(s.right);
            m.right = reflect(s.left);
            m.speed = -s.speed;
            m.birth = {-s.birth.x, s.birth.t};
            m.split = {s.split.a1, s.split.a0};
            return m;
          },
      },
      w);
}

WaveFan reflect(const WaveFan& fan) {
  WaveFan out{reflect(fan.right), reflect(fan.left), {-fan.origin.x, fan.origin.t}, {}};
  for (auto it = fan.waves.rbegin(); it != fan.waves.rend(); ++it) out.waves.push_back(reflect(*it));
  return out;
}

}  // namespace singshock
