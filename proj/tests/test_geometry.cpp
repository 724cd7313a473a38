#include <gtest/gtest.h>

#include <random>

#include "pathlet/geometry.hpp"

using namespace pathlet;

TEST(Eval, Midpoint) {
  const auto c = PolyCurve::from_points({{0, 0}, {2, 0}});
  EXPECT_EQ(c.eval(1.5), (Point{1, 0}));
  EXPECT_EQ(c.eval(1.0), (Point{0, 0}));
}

TEST(Eval, SecondEdge) {
  const auto c = PolyCurve::from_points({{0, 0}, {1, 1}, {2, 0}});
  const auto p = c.eval(2.25);
  EXPECT_DOUBLE_EQ(p[0], 1.25);
  EXPECT_DOUBLE_EQ(p[1], 0.75);
}

TEST(Eval, OutOfDomainThrows) {
  const auto c = PolyCurve::from_points({{0, 0}, {2, 0}});
  EXPECT_THROW(c.eval(0.5), std::domain_error);
  EXPECT_THROW(c.eval(2.01), std::domain_error);
  EXPECT_THROW(c.subcurve(1.5, 1.2), std::domain_error);
}

TEST(Curve, RejectsNonFinite) {
  EXPECT_THROW(PolyCurve(2, {0.0, std::nan("")}), InputError);
  EXPECT_THROW(PolyCurve::from_points({{0, 0}, {1, 1, 1}}), InputError);
}

TEST(Curve, SubcurveKeepsInteriorVertices) {
  const auto c = PolyCurve::from_points({{0, 0}, {1, 0}, {1, 1}, {2, 1}});
  const auto s = c.subcurve(1.5, 3.5);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.eval(1), (Point{0.5, 0}));
  EXPECT_EQ(s.eval(2), (Point{1, 0}));
  EXPECT_EQ(s.eval(3), (Point{1, 1}));
  EXPECT_EQ(s.eval(4), (Point{1.5, 1}));
  EXPECT_EQ(c.subcurve(2, 2).size(), 1u);
  EXPECT_EQ(c.subcurve(2, 3).size(), 2u);
}

TEST(Curve, Reversed) {
  const auto c = PolyCurve::from_points({{0, 0}, {1, 0}, {1, 1}});
  EXPECT_EQ(c.reversed(), PolyCurve::from_points({{1, 1}, {1, 0}, {0, 0}}));
}

TEST(FreeInterval, Tangency) {
  const Point a{0, 0}, b{2, 0}, c{1, 1};
  const auto iv = free_interval_on_edge(a, b, c, 1.0);
  ASSERT_TRUE(iv);
  EXPECT_DOUBLE_EQ(iv->lo, 0.5);
  EXPECT_DOUBLE_EQ(iv->hi, 0.5);
}

TEST(FreeInterval, SymmetricChord) {
  const Point a{0, 0}, b{2, 0}, c{1, 0};
  const auto iv = free_interval_on_edge(a, b, c, 0.5);
  ASSERT_TRUE(iv);
  EXPECT_DOUBLE_EQ(iv->lo, 0.25);
  EXPECT_DOUBLE_EQ(iv->hi, 0.75);
}

TEST(FreeInterval, Disjoint) {
  const Point a{0, 0}, b{2, 0}, c{5, 5};
  EXPECT_FALSE(free_interval_on_edge(a, b, c, 1.0));
}

TEST(FreeInterval, ZeroLengthSegment) {
  const Point a{1, 1}, c{1, 2};
  const auto iv = free_interval_on_edge(a, a, c, 1.0);
  ASSERT_TRUE(iv);
  EXPECT_EQ(iv->lo, 0.0);
  EXPECT_EQ(iv->hi, 1.0);
  EXPECT_FALSE(free_interval_on_edge(a, a, c, 0.5));
}

TEST(FreeInterval, EndpointsWithinRadius) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int it = 0; it < 2000; ++it) {
    const Point a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
    const double r = std::abs(u(rng));
    const auto iv = free_interval_on_edge(a, b, c, r, 1e-9);
    if (!iv) continue;
    ASSERT_LE(iv->lo, iv->hi);
    for (double s : {iv->lo, iv->hi, 0.5 * (iv->lo + iv->hi)})
      ASSERT_LE(distance(lerp(a, b, s), c), r + 1e-9 * 10);
  }
}

TEST(CapsuleInterval, ParallelBand) {
  const Point p0{0, 0}, p1{2, 0}, q0{0, 0.5}, q1{2, 0.5};
  const auto iv = segment_capsule_interval(p0, p1, q0, q1, 1.0);
  ASSERT_TRUE(iv);
  EXPECT_DOUBLE_EQ(iv->lo, 0.0);
  EXPECT_DOUBLE_EQ(iv->hi, 1.0);
}

TEST(CapsuleInterval, MatchesSampling) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int it = 0; it < 300; ++it) {
    const Point p0{u(rng), u(rng)}, p1{u(rng), u(rng)}, q0{u(rng), u(rng)}, q1{u(rng), u(rng)};
    const double r = 0.2 + std::abs(u(rng)) * 0.5;
    const auto iv = segment_capsule_interval(p0, p1, q0, q1, r);
    // sampled distance from p(s) to segment q0q1
    double lo = 2, hi = -1;
    for (int k = 0; k <= 4000; ++k) {
      const double s = k / 4000.0;
      const Point p = lerp(p0, p1, s);
      const auto f = free_interval_on_edge(q0, q1, p, r);
      if (f) lo = std::min(lo, s), hi = std::max(hi, s);
    }
    if (hi < 0) {
      if (iv) EXPECT_LT(iv->hi - iv->lo, 1e-3);
      continue;
    }
    ASSERT_TRUE(iv);
    EXPECT_NEAR(iv->lo, lo, 1e-3);
    EXPECT_NEAR(iv->hi, hi, 1e-3);
  }
}
