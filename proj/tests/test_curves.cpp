#include <gtest/gtest.h>

#include <cmath>

#include "singshock/curves.hpp"
#include "singshock/error.hpp"
#include "support/oracles.hpp"

using namespace singshock;

namespace singshock {
void PrintTo(Region r, std::ostream* os) { *os << region_name(r); }
}  // namespace singshock

namespace {

const double kSqrt12 = std::sqrt(12.0);

oracle::UV uv(State s) { return {s.u, s.v}; }

}  // namespace

TEST(Hugoniot, Examples) {
  EXPECT_EQ(hugoniot_v({0, 0}, 0.0, Branch::Plus), 0.0);
  EXPECT_NEAR(hugoniot_v({0, 0}, -2.0, Branch::Plus), 0.36700683814454793, 1e-12);
  EXPECT_NEAR(hugoniot_v({0, 0}, -2.0, Branch::Minus), 3.6329931618554521, 1e-12);
}

TEST(Hugoniot, MatchesEliminatedJumpConditions) {
  oracle::Rng rng(10);
  for (int i = 0; i < 500; ++i) {
    const State base{rng.uniform(-5, 5), rng.uniform(-20, 20)};
    const double u = base.u + rng.uniform(-kSqrt12, kSqrt12);
    if (std::abs(u - base.u) < 1e-3) continue;
    const auto pair = oracle::hugoniot_pair(uv(base), u);
    const double lo = hugoniot_v(base, u, Branch::Plus);
    const double hi = hugoniot_v(base, u, Branch::Minus);
    // For u < u0 the plus branch is the lower one; above u0 they swap.
    const double a = std::min(lo, hi);
    const double b = std::max(lo, hi);
    EXPECT_NEAR(a, pair[0], 1e-9 * std::max(1.0, std::abs(pair[0])));
    EXPECT_NEAR(b, pair[1], 1e-9 * std::max(1.0, std::abs(pair[1])));
  }
}

TEST(Hugoniot, SpeedSatisfiesBothJumpConditions) {
  oracle::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const State base{rng.uniform(-5, 5), rng.uniform(-20, 20)};
    const double u = base.u + rng.uniform(-kSqrt12, kSqrt12);
    if (std::abs(u - base.u) < 1e-3) continue;
    for (Branch br : {Branch::Plus, Branch::Minus}) {
      const State q{u, hugoniot_v(base, u, br)};
      const double c = hugoniot_speed(base, u, br);
      EXPECT_NEAR(oracle::residual_u(uv(base), uv(q), c), 0.0, 1e-10 * std::max(1.0, std::abs(q.v)));
      EXPECT_NEAR(oracle::deficiency(uv(base), uv(q), c), 0.0, 1e-9 * std::max(1.0, std::abs(q.v)));
    }
  }
}

TEST(Hugoniot, SlopeMatchesFiniteDifference) {
  const State base{0.5, -1.0};
  for (double du : {-3.0, -1.0, -0.2, 0.7, 2.5}) {
    for (Branch br : {Branch::Plus, Branch::Minus}) {
      const double u = base.u + du;
      const double h = 1e-6;
      const double fd = (hugoniot_v(base, u + h, br) - hugoniot_v(base, u - h, br)) / (2 * h);
      EXPECT_NEAR(hugoniot_slope(base, u, br), fd, 1e-6);
    }
  }
}

TEST(Hugoniot, OutsideLocusThrows) {
  try {
    hugoniot_v({0, 0}, -4.0, Branch::Plus);
    FAIL() << "expected DomainError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(Rarefaction, Examples) {
  EXPECT_EQ(rarefaction_v({0, 0}, 2.0, Family::One), 4.0);
  EXPECT_EQ(rarefaction_v({0, 0}, 0.0, Family::Two), 0.0);
  EXPECT_EQ(rarefaction_v({1, 1}, 3.0, Family::Two), 3.0);
}

TEST(Rarefaction, MatchesIntegratedEigenvectorField) {
  oracle::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const State base{rng.uniform(-5, 5), rng.uniform(-20, 20)};
    const double u = base.u + rng.uniform(-4, 4);
    for (int fam : {1, 2}) {
      const Family f = fam == 1 ? Family::One : Family::Two;
      EXPECT_NEAR(rarefaction_v(base, u, f), oracle::integral_curve(uv(base), u, fam), 1e-10);
      EXPECT_NEAR(rarefaction_slope(u, f), 2 * u - lambda({u, 0}, f), 1e-15);
    }
  }
}

TEST(InverseRarefaction, Examples) {
  EXPECT_EQ(inverse_rarefaction_v({2, 4}, 0.0, Family::One), 0.0);
  EXPECT_EQ(inverse_rarefaction_v({0, 0}, 0.0, Family::One), 0.0);
  // The forward 2-curve from (-1, 1.5) passes through (0, 0).
  EXPECT_EQ(inverse_rarefaction_v({0, 0}, -1.0, Family::Two), 1.5);
  EXPECT_EQ(rarefaction_v({-1, 1.5}, 0.0, Family::Two), 0.0);
}

TEST(InverseRarefaction, RoundTrip) {
  oracle::Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const State right{rng.uniform(-10, 10), rng.uniform(-50, 50)};
    const double u = right.u + rng.uniform(-6, 0);
    for (Family f : {Family::One, Family::Two}) {
      const State left{u, inverse_rarefaction_v(right, u, f)};
      EXPECT_NEAR(rarefaction_v(left, right.u, f), right.v, 1e-12 * std::max(1.0, std::abs(right.v)));
    }
  }
}

TEST(Tangency, ShockAndRarefactionCurvesHaveSecondOrderContact) {
  oracle::Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    const State base{rng.uniform(-3, 3), rng.uniform(-5, 5)};
    for (auto [br, fam] : {std::pair{Branch::Plus, Family::One}, std::pair{Branch::Minus, Family::Two}}) {
      for (double sign : {-1.0, 1.0}) {
        double cs[2];
        int k = 0;
        for (double h : {0.1, 0.01}) {
          const double u = base.u + sign * h;
          cs[k++] = std::abs(hugoniot_v(base, u, br) - rarefaction_v(base, u, fam)) / (h * h * h);
        }
        EXPECT_GT(cs[0], 0.0);
        EXPECT_NEAR(cs[1] / cs[0], 1.0, 0.05);
      }
    }
  }
}

TEST(BandCurves, Examples) {
  EXPECT_EQ(curve_D_v({0, 0}, -4.0), 12.0);
  EXPECT_EQ(curve_E_v({0, 0}, -4.0), 4.0);
  EXPECT_EQ(curve_D_v({0, 0}, 0.0), 0.0);
  EXPECT_EQ(curve_E_v({0, 0}, 0.0), 0.0);
  EXPECT_EQ(curve_D_v({0, 0}, -2.0), 2.0);
  EXPECT_EQ(curve_E_v({0, 0}, -2.0), 2.0);
}

TEST(BandCurves, DefinedBySpeedConditions) {
  oracle::Rng rng(15);
  for (int i = 0; i < 300; ++i) {
    const State base{rng.uniform(-5, 5), rng.uniform(-20, 20)};
    const double u = base.u - rng.uniform(0.5, 8);
    const State d{u, curve_D_v(base, u)};
    const State e{u, curve_E_v(base, u)};
    EXPECT_NEAR(oracle::speed(uv(base), uv(d)), base.u - 1.0, 1e-10 * std::max(1.0, std::abs(d.v)));
    EXPECT_NEAR(oracle::speed(uv(base), uv(e)), u + 1.0, 1e-10 * std::max(1.0, std::abs(e.v)));
  }
}

TEST(LocusPoints, Examples) {
  const LocusPoints p = locus_points({0, 0});
  EXPECT_EQ(p.d_tilde, (State{-3, 3}));
  EXPECT_EQ(p.g_tilde, (State{-3, 6}));
  EXPECT_EQ(p.de_corner, (State{-2, 2}));
  EXPECT_EQ(locus_points({1, 0}).de_corner, (State{-1, 0}));
  EXPECT_NEAR(hugoniot_v({0, 0}, -3.0, Branch::Plus), 3.0, 1e-12);
  EXPECT_NEAR(hugoniot_v({0, 0}, -3.0, Branch::Minus), 6.0, 1e-12);
}

TEST(LocusPoints, BoundaryStitching) {
  oracle::Rng rng(16);
  for (int i = 0; i < 100; ++i) {
    const State base{rng.uniform(-10, 10), rng.uniform(-50, 50)};
    const double u3 = base.u - 3.0;
    const double scale = std::max(1.0, std::abs(base.v) + std::abs(base.u) * 3);
    EXPECT_NEAR(hugoniot_v(base, u3, Branch::Plus), curve_E_v(base, u3), 1e-12 * scale);
    EXPECT_NEAR(hugoniot_v(base, u3, Branch::Minus), curve_D_v(base, u3), 1e-12 * scale);
    const double uw = base.u - kSqrt12;
    // The branches separate like sqrt(u - uw), so rounding in uw shows up at ~1e-8.
    EXPECT_NEAR(hugoniot_v(base, uw, Branch::Plus), hugoniot_v(base, uw, Branch::Minus), 1e-6 * scale);
    const LocusPoints p = locus_points(base);
    EXPECT_EQ(p.de_corner.u, base.u - 2.0);
    EXPECT_EQ(p.de_corner.v, base.v - 2.0 * base.u + 2.0);
    EXPECT_NEAR(curve_D_v(base, p.de_corner.u), p.de_corner.v, 1e-12 * scale);
    EXPECT_NEAR(curve_E_v(base, p.de_corner.u), p.de_corner.v, 1e-12 * scale);
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify({0, 0}, {-4, 6}), Region::Q7);
  EXPECT_EQ(classify({0, 0}, {-4, 13}), Region::AboveD);
  EXPECT_EQ(classify({0, 0}, {-4, 3}), Region::BelowE);
  // Below the lower Hugoniot branch the jump still produces mass: Q7.
  EXPECT_EQ(classify({0, 0}, {-3.2, 3.5}), Region::Q7);
  // Strictly between the two branches the growth rate is negative.
  EXPECT_EQ(classify({0, 0}, {-3.2, 5.0}), Region::SdslOnly);
  EXPECT_EQ(classify({0, 0}, {-3.2, hugoniot_v({0, 0}, -3.2, Branch::Plus)}), Region::OnJ1);
  EXPECT_EQ(classify({0, 0}, {1, 0}), Region::Classical);
  // At u = -2.5: S1 = 1.39, E = 2.5, D = 3.75, S2 = 4.86.
  EXPECT_EQ(classify({0, 0}, {-2.5, 4.3}), Region::HatD);
  EXPECT_EQ(classify({0, 0}, {-2.5, 2.0}), Region::HatE);
  EXPECT_EQ(classify({0, 0}, {-2.5, 3.0}), Region::D0);
  EXPECT_EQ(classify({0, 0}, {-2.5, 6.0}), Region::Classical);
  // At u = -1: S1 = -0.46, D = 0, E = 1, S2 = 1.46.
  EXPECT_EQ(classify({0, 0}, {-1, 1.2}), Region::HatHatD);
  EXPECT_EQ(classify({0, 0}, {-1, -0.2}), Region::HatHatE);
  EXPECT_EQ(classify({0, 0}, {-1, 0.5}), Region::SdslOnly);
  EXPECT_EQ(region_name(Region::AboveD), "ABOVE_D");
}

namespace {

// Regions as point sets, written from their boundary descriptions. Each
// returns true only for points strictly inside.
struct Geometry {
  State b;
  double d(double u) const { return curve_D_v(b, u); }
  double e(double u) const { return curve_E_v(b, u); }
  std::array<double, 2> s(double u) const { return oracle::hugoniot_pair({b.u, b.v}, u); }
};

std::vector<Region> containing(const Geometry& g, State q) {
  std::vector<Region> out;
  const double du = q.u - g.b.u;
  const double d = g.d(q.u);
  const double e = g.e(q.u);
  const bool in_lens = du > -kSqrt12 && du < 0 && q.v > g.s(q.u)[0] && q.v < g.s(q.u)[1];
  if (du < -3 && q.v > d) out.push_back(Region::AboveD);
  if (du < -3 && q.v < e) out.push_back(Region::BelowE);
  if (du < -3 && q.v > e && q.v < d && !in_lens) out.push_back(Region::Q7);
  if (du < -3 && in_lens) out.push_back(Region::SdslOnly);
  if (du > -3 && du < -2 && q.v > d && in_lens) out.push_back(Region::HatD);
  if (du > -3 && du < -2 && q.v < e && in_lens) out.push_back(Region::HatE);
  if (du > -3 && du < -2 && q.v < d && q.v > e) out.push_back(Region::D0);
  if (du > -2 && du < 0 && q.v > e && in_lens) out.push_back(Region::HatHatD);
  if (du > -2 && du < 0 && q.v < d && in_lens) out.push_back(Region::HatHatE);
  if (du > -2 && du < 0 && q.v < e && q.v > d) out.push_back(Region::SdslOnly);
  if (du > 0 || (du > -3 && du < 0 && !in_lens)) out.push_back(Region::Classical);
  return out;
}

bool near_boundary(const Geometry& g, State q) {
  const double du = q.u - g.b.u;
  const double eps = 1e-6;
  for (double line : {-kSqrt12, -3.0, -2.0, 0.0}) {
    if (std::abs(du - line) < eps) return true;
  }
  if (std::abs(q.v - g.d(q.u)) < eps || std::abs(q.v - g.e(q.u)) < eps) return true;
  if (du > -kSqrt12 && du < 0) {
    const auto s = g.s(q.u);
    if (std::abs(q.v - s[0]) < eps || std::abs(q.v - s[1]) < eps) return true;
  }
  return false;
}

}  // namespace

TEST(Classify, IsAPartitionMatchingTheRegionDefinitions) {
  oracle::Rng rng(17);
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    const Geometry g{{rng.uniform(-3, 3), rng.uniform(-5, 5)}};
    const State q{g.b.u + rng.uniform(-6, 2), g.b.v + rng.uniform(-20, 30)};
    if (near_boundary(g, q)) continue;
    const auto regions = containing(g, q);
    ASSERT_EQ(regions.size(), 1u) << "point (" << q.u << "," << q.v << ") base (" << g.b.u << "," << g.b.v << ")";
    EXPECT_EQ(classify(g.b, q), regions.front())
        << "point (" << q.u << "," << q.v << ") base (" << g.b.u << "," << g.b.v << ")";
    ++checked;
  }
  EXPECT_GT(checked, 15000);
}

TEST(Classify, Q7IsInsideSdsl) {
  oracle::Rng rng(18);
  int q7 = 0;
  for (int i = 0; i < 10000; ++i) {
    const State base{rng.uniform(-3, 3), rng.uniform(-5, 5)};
    const double u = base.u - rng.uniform(3, 6);
    const double lo = curve_E_v(base, u);
    const double hi = curve_D_v(base, u);
    const State q{u, rng.uniform(lo - 2, hi + 2)};
    if (in_q7(base, q)) {
      ++q7;
      EXPECT_TRUE(in_sdsl(base, q));
      EXPECT_TRUE(in_overcompressive_band(base, q));
    }
  }
  EXPECT_GT(q7, 3000);
}

TEST(Classify, Q7PointsProduceMass) {
  oracle::Rng rng(19);
  for (int i = 0; i < 2000; ++i) {
    const State base{rng.uniform(-3, 3), rng.uniform(-5, 5)};
    const double u = base.u - rng.uniform(3, 6);
    const State q{u, rng.uniform(curve_E_v(base, u), curve_D_v(base, u))};
    const Region r = classify(base, q);
    const double k = oracle::deficiency({base.u, base.v}, {q.u, q.v}, oracle::speed({base.u, base.v}, {q.u, q.v}));
    if (r == Region::Q7) EXPECT_GT(k, -1e-9);
    if (r == Region::SdslOnly) EXPECT_LT(k, 1e-9);
  }
}
