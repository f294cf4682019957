#include <gtest/gtest.h>

#include <cmath>

#include "singshock/curves.hpp"
#include "singshock/error.hpp"
#include "singshock/fanode.hpp"
#include "singshock/singular.hpp"
#include "support/oracles.hpp"

using namespace singshock;

namespace {

oracle::UV uv(State s) { return {s.u, s.v}; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidInput;
}

// Singular shock (0,0) -> u1 born at x = -1 meeting a fan centred at the
// origin whose tail is u1 and whose head has u = head_u.
struct Meeting {
  State left{0, 0};
  FanDescriptor fd;
  Point start;
  double zeta = 0.0;
};

Meeting meeting(State u1, double head_u, Family family, double zeta0 = 0.0) {
  Meeting s;
  s.fd = make_fan(family, {0, 0}, u1, {head_u, rarefaction_v(u1, head_u, family)});
  const double c = shock_speed(s.left, u1);
  const double t = 1.0 / (c - s.fd.xi_tail());
  s.start = {s.fd.xi_tail() * t, t};
  s.zeta = zeta0 + growth_rate(s.left, u1) * t;
  return s;
}

PathOptions until(double t_end, double steps = 10000.0) {
  PathOptions o;
  o.steps_per_unit_time = steps;
  o.t_end = t_end;
  return o;
}

void check_samples(const PathTrajectory& p, const FanDescriptor& fd) {
  ASSERT_GE(p.samples.size(), 2u);
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    const PathSample& s = p.samples[i];
    EXPECT_GE(s.beta, 0.0);
    const double scale = std::max({1.0, std::abs(s.left.v), std::abs(s.right.v)});
    EXPECT_LE(std::abs(oracle::residual_u(uv(s.left), uv(s.right), s.c)), 1e-10 * scale) << "sample " << i;
    // Right state comes from the fan profile at the sample's ray.
    const double xi = (s.x - fd.center.x) / (s.t - fd.center.t);
    if (xi >= fd.xi_tail() && xi <= fd.xi_head()) {
      const oracle::UV ref = oracle::fan_state(uv(fd.tail), fd.family == Family::One ? 1 : 2, xi);
      EXPECT_NEAR(s.right.u, ref.u, 1e-12);
      EXPECT_NEAR(s.right.v, ref.v, 1e-9 * scale);
    }
    if (i > 0) {
      EXPECT_GT(s.t, p.samples[i - 1].t);
      if (s.c < 0.0 && p.samples[i - 1].c < 0.0) EXPECT_LT(s.x, p.samples[i - 1].x);
    }
  }
}

}  // namespace

TEST(FanState, Examples) {
  const FanDescriptor f1 = make_fan(Family::One, {0, 0}, {0, 0}, {2, 4});
  EXPECT_EQ(f1.xi_tail(), -1.0);
  EXPECT_EQ(f1.xi_head(), 1.0);
  EXPECT_EQ(fan_state(f1, -1.0), (State{0, 0}));
  EXPECT_EQ(fan_state(f1, 1.0), (State{2, 4}));
  const FanDescriptor f2 = make_fan(Family::Two, {0, 0}, {0, 0}, {1, -0.5});
  EXPECT_EQ(fan_state(f2, 1.0), (State{0, 0}));
}

TEST(FanState, MatchesIntegralCurve) {
  oracle::Rng rng(40);
  for (int i = 0; i < 200; ++i) {
    const Family fam = i % 2 ? Family::One : Family::Two;
    const State tail{rng.uniform(-5, 5), rng.uniform(-10, 10)};
    const double hu = tail.u + rng.uniform(0.1, 4);
    const FanDescriptor fd = make_fan(fam, {0, 0}, tail, {hu, rarefaction_v(tail, hu, fam)});
    const double xi = rng.uniform(fd.xi_tail(), fd.xi_head());
    const State s = fan_state(fd, xi);
    const oracle::UV ref = oracle::fan_state(uv(tail), fam == Family::One ? 1 : 2, xi);
    EXPECT_NEAR(s.u, ref.u, 1e-12);
    EXPECT_NEAR(s.v, ref.v, 1e-10 * std::max(1.0, std::abs(ref.v)));
    EXPECT_NEAR(lambda(s, fam), xi, 1e-12);
  }
}

TEST(FanState, Errors) {
  const FanDescriptor f1 = make_fan(Family::One, {0, 0}, {0, 0}, {2, 4});
  EXPECT_EQ(kind_of([&] { fan_state(f1, 1.1); }), ErrorKind::OutsideFan);
  EXPECT_EQ(kind_of([&] { fan_state(f1, -1.1); }), ErrorKind::OutsideFan);
  EXPECT_NO_THROW(fan_state(f1, 1.0 + 1e-13));
  EXPECT_EQ(kind_of([] { make_fan(Family::One, {0, 0}, {0, 0}, {2, 5}); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { make_fan(Family::One, {0, 0}, {2, 4}, {0, 0}); }), ErrorKind::InvalidInput);
}

TEST(IntegratePath, DegenerateFanIsStraightLine) {
  const State left{0, 0};
  const State right{-4, 6};
  const FanDescriptor fd = make_fan(Family::One, {0, 0}, right, right);
  PathOptions o = until(3.0);
  o.continue_past_head = true;
  const Point start{-5, 1};
  const PathTrajectory p = integrate_path(left, fd, start, 0.5, o);
  EXPECT_EQ(p.terminal, PathEvent::Completed);
  const double c = oracle::speed(uv(left), uv(right));
  const double k = oracle::deficiency(uv(left), uv(right), c);
  for (const PathSample& s : p.samples) {
    EXPECT_NEAR(s.x, start.x + c * (s.t - start.t), 1e-10);
    EXPECT_NEAR(s.beta, 0.5 + k * (s.t - start.t), 1e-10);
  }
  EXPECT_NEAR(p.back().t, 3.0, 1e-12);
}

TEST(IntegratePath, ConstantDecayingStateVanishesOnSchedule) {
  // Right state between the Hugoniot branches: the strength decays linearly.
  const State left{0, 0};
  const State right{-3.2, 5.0};
  const double c = oracle::speed(uv(left), uv(right));
  const double k = oracle::deficiency(uv(left), uv(right), c);
  ASSERT_LT(k, 0.0);
  const FanDescriptor fd = make_fan(Family::One, {0, 0}, right, right);
  PathOptions o = until(100.0);
  o.continue_past_head = true;
  const PathTrajectory p = integrate_path(left, fd, {0, 1}, 1.0, o);
  ASSERT_EQ(p.terminal, PathEvent::Vanished);
  EXPECT_NEAR(p.back().t, 1.0 - 1.0 / k, 1e-6);
  EXPECT_LE(std::abs(p.back().beta), 1e-10);
}

TEST(IntegratePath, MatchesMidpointOracle) {
  const Meeting s = meeting({-5, 12}, -4.5, Family::One);
  const PathTrajectory full = integrate_path(s.left, s.fd, s.start, s.zeta, until(5.0));
  ASSERT_EQ(full.terminal, PathEvent::ExitedFan);
  const double t_mid = s.start.t + 0.6 * (full.back().t - s.start.t);
  const PathTrajectory p = integrate_path(s.left, s.fd, s.start, s.zeta, until(t_mid));
  ASSERT_EQ(p.terminal, PathEvent::Completed);
  const oracle::PathEnd ref =
      oracle::midpoint_path(uv(s.left), 1, uv(s.fd.tail), 0, 0, s.start.x, s.start.t, s.zeta, t_mid, 20000);
  EXPECT_NEAR(p.back().t, ref.t, 1e-12);
  EXPECT_NEAR(p.back().x, ref.x, 1e-8);
  EXPECT_NEAR(p.back().beta, ref.beta, 1e-8);
  check_samples(p, s.fd);
}

TEST(IntegratePath, StrengthGrowsWhileRightStatesStayInQ7) {
  const Meeting s = meeting({-5, 12}, -4.5, Family::One);
  const PathTrajectory p = integrate_path(s.left, s.fd, s.start, s.zeta, until(5.0));
  for (std::size_t i = 1; i < p.samples.size(); ++i) {
    ASSERT_EQ(classify(s.left, p.samples[i].right), Region::Q7);
    EXPECT_GT(p.samples[i].beta, p.samples[i - 1].beta);
  }
}

TEST(IntegratePath, StepHalvingConverges) {
  struct Case {
    State u1;
    double head;
    Family fam;
  };
  for (const Case& c : {Case{{-5, 12}, -4.5, Family::One}, Case{{-4, 6}, -3.1, Family::One},
                        Case{{-6, 29}, -5, Family::One}, Case{{-4, 7.5}, -2.5, Family::Two}}) {
    const Meeting s = meeting(c.u1, c.head, c.fam);
    const double t_end = s.start.t + 3.0;
    const PathTrajectory a = integrate_path(s.left, s.fd, s.start, s.zeta, until(t_end, 10000));
    const PathTrajectory b = integrate_path(s.left, s.fd, s.start, s.zeta, until(t_end, 20000));
    EXPECT_EQ(a.terminal, b.terminal);
    EXPECT_LT(std::abs(a.back().x - b.back().x), 1e-8) << c.u1.u << "," << c.u1.v;
    EXPECT_LT(std::abs(a.back().beta - b.back().beta), 1e-8) << c.u1.u << "," << c.u1.v;
  }
}

TEST(IntegratePath, RejectsNegativeStrength) {
  const Meeting s = meeting({-5, 12}, -4.5, Family::One);
  EXPECT_EQ(kind_of([&] { integrate_path(s.left, s.fd, s.start, -1.0); }), ErrorKind::InvalidInput);
}

TEST(SlidingPath, EntryThroughGTildeKeepsStrength) {
  // G~ = (-3, 6) for base (0,0): the singular shock starts on D and J.
  const State left{0, 0};
  const State g = locus_points(left).g_tilde;
  ASSERT_EQ(g, (State{-3, 6}));
  const FanDescriptor fd = make_fan(Family::One, {0, 0}, g, {-2.5, rarefaction_v(g, -2.5, Family::One)});
  const FanCrossing fc = cross_fan(left, fd, {fd.xi_tail(), 1.0}, 2.0, until(10.0));
  EXPECT_EQ(fc.outcome, CrossingOutcome::ExitedSliding);
  for (const PathTrajectory& st : fc.stages) {
    for (const PathSample& s : st.samples) EXPECT_NEAR(s.beta, 2.0, 1e-6);
  }
}

TEST(SlidingPath, LeftStateRunsUpR1AndRightStateStaysOnD) {
  const Meeting s = meeting({-6, 29}, -5, Family::One);
  const FanCrossing fc = cross_fan(s.left, s.fd, s.start, s.zeta, until(5.0));
  ASSERT_EQ(fc.stages.size(), 2u);
  for (const PathSample& p : fc.stages[1].samples) {
    EXPECT_NEAR(p.left.v, rarefaction_v(s.left, p.left.u, Family::One), 1e-9 * std::max(1.0, std::abs(p.left.v)));
    EXPECT_NEAR(p.right.v, curve_D_v(p.left, p.right.u), 1e-9 * std::max(1.0, std::abs(p.right.v)));
    EXPECT_GE(p.left.u - p.right.u, 2.0 - 1e-9);
  }
}

TEST(ClosedFormSpeed, PoleAndFiniteness) {
  EXPECT_EQ(kind_of([] { closed_form_c({1, 0}, {-4, 6}, 1.0, 2.0); }), ErrorKind::Pole);
  oracle::Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const State s0{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    if (std::abs(s0.u - 1.0) < 1e-3) continue;
    const State s1{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    EXPECT_TRUE(std::isfinite(closed_form_c(s0, s1, 1.0, rng.uniform(1, 5))));
  }
}

struct CrossingCase {
  const char* regime;
  State u1;
  double head;
  Family family;
  double zeta0;
  CrossingOutcome outcome;
};

class CrossFan : public ::testing::TestWithParam<CrossingCase> {};

TEST_P(CrossFan, OutcomeAndInvariants) {
  const CrossingCase& c = GetParam();
  const Meeting s = meeting(c.u1, c.head, c.family, c.zeta0);
  ASSERT_EQ(classify(s.left, c.u1), Region::Q7);
  const FanCrossing fc = cross_fan(s.left, s.fd, s.start, s.zeta, until(s.start.t + 40.0));
  EXPECT_EQ(fc.outcome, c.outcome);
  EXPECT_EQ(fc.regime, c.regime);
  for (const PathTrajectory& st : fc.stages) {
    check_samples(st, s.fd);
    for (const PathSample& p : st.samples) {
      // Overcompressive along the whole path.
      EXPECT_LE(p.c, lambda(p.left, Family::One) + 1e-8);
      EXPECT_GE(p.c, lambda(p.right, Family::Two) - 1e-8);
    }
  }
  const PathTrajectory& first = fc.stages.front();
  const std::string r = c.regime;
  if (r == "a" || r == "b" || r == "c") {
    for (std::size_t i = 1; i < first.samples.size(); ++i) EXPECT_GE(first.samples[i].beta, first.samples[i - 1].beta);
  }
  if (r == "d" || r == "g") EXPECT_TRUE(fc.had_decreasing_phase || fc.k_after < 0.0);
  if (c.outcome == CrossingOutcome::ExitedSliding) EXPECT_EQ(fc.stages.front().terminal, PathEvent::ReachedD);
  if (r == "a" || r == "b") EXPECT_GT(fc.k_after, 0.0);
  if (r == "e" || r == "f") EXPECT_NEAR(fc.k_after, 0.0, kZeroRateTol);
  if (r == "c" || r == "f") {
    ASSERT_TRUE(fc.asymptotic_right.has_value());
    // The limiting right state lies on E of the left state.
    EXPECT_NEAR(fc.asymptotic_right->v, curve_E_v(s.left, fc.asymptotic_right->u), 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Regimes, CrossFan,
    ::testing::Values(CrossingCase{"a", {-5, 12}, -4.5, Family::One, 0, CrossingOutcome::Exited},
                      CrossingCase{"b", {-6, 29}, -5, Family::One, 0, CrossingOutcome::ExitedSliding},
                      CrossingCase{"c", {-6, 7}, -5, Family::Two, 0, CrossingOutcome::Completed},
                      CrossingCase{"d", {-4, 6}, -3.1, Family::One, 0, CrossingOutcome::Exited},
                      CrossingCase{"e", {-4, 8.5}, -2.5, Family::One, 0, CrossingOutcome::ExitedSliding},
                      CrossingCase{"f", {-4, 7.5}, -2.5, Family::Two, 0, CrossingOutcome::Completed},
                      CrossingCase{"g", {-4, 6.3}, -2.0, Family::One, 5, CrossingOutcome::ExitedSliding}),
    [](const ::testing::TestParamInfo<CrossingCase>& info) { return std::string("regime_") + info.param.regime; });

TEST(Reflect, FanAndPathMirror) {
  const FanDescriptor fd = make_fan(Family::One, {1, 0}, {0, 0}, {2, 4});
  const FanDescriptor m = reflect(fd);
  EXPECT_EQ(m.family, Family::Two);
  EXPECT_EQ(m.center.x, -1.0);
  EXPECT_DOUBLE_EQ(m.xi_tail(), -fd.xi_head());
  EXPECT_DOUBLE_EQ(m.xi_head(), -fd.xi_tail());
  PathTrajectory p;
  p.samples.push_back({1.0, 2.0, -0.5, 3.0, {1, 2}, {-3, 4}});
  const PathTrajectory q = reflect(p);
  EXPECT_EQ(q.back().x, -2.0);
  EXPECT_EQ(q.back().c, 0.5);
  EXPECT_EQ(q.back().left, reflect(State{-3, 4}));
  EXPECT_EQ(q.back().right, reflect(State{1, 2}));
}
