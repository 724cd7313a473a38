#include <gtest/gtest.h>

#include <random>

#include "pathlet/reachability.hpp"
#include "pathlet/testing/oracles.hpp"
#include "pathlet/universe.hpp"
#include "test_util.hpp"

using namespace pathlet;
namespace oracle = pathlet::testing;

namespace {

std::vector<std::pair<double, double>> coords(const std::vector<CriticalPoint>& Z) {
  std::vector<std::pair<double, double>> out;
  for (const auto& z : Z) out.emplace_back(z.x, z.y);
  return out;
}

// Z: component endpoints on a few lines plus random interior free points.
std::vector<CriticalPoint> random_z(std::mt19937_64& rng, const PolyCurve& W, const PolyCurve& T,
                                    double r, std::size_t max_points) {
  std::vector<CriticalPoint> Z;
  std::uniform_real_distribution<double> ux(1.0, W.last_param()), uy(1.0, T.last_param());
  for (int k = 0; k < 4 && Z.size() < max_points; ++k) {
    double x = rng() % 2 ? std::floor(ux(rng)) : ux(rng);
    for (const auto& cp : critical_points_on_line(W, T, x, r))
      if (Z.size() < max_points) Z.push_back(cp);
  }
  for (int tries = 0; tries < 400 && Z.size() < max_points; ++tries) {
    const double x = ux(rng), y = uy(rng);
    if (distance(W.eval(x), T.eval(y)) < r * 0.98) Z.push_back({x, y});
  }
  return Z;
}

}  // namespace

TEST(RectDomain, FullyFreeHasNoObstacles) {
  const auto W = PolyCurve::from_points({{0, 0}, {1, 0}, {2, 0}});
  const auto T = PolyCurve::from_points({{0, 0}, {1, 1}, {2, 0}, {1, 0}});
  EXPECT_TRUE(build_rect_domain(W, T, 100.0).obstacles().empty());
}

TEST(RectDomain, FullyBlocked) {
  const auto W = PolyCurve::from_points({{0, 0}, {1, 0}, {2, 0}});
  const auto T = PolyCurve::from_points({{50, 50}, {51, 50}, {52, 50}});
  const auto d = build_rect_domain(W, T, 1.0);
  const auto obs = d.obstacles();
  // 3 vertical lines x 2 rows + 3 horizontal lines x 2 columns
  EXPECT_EQ(obs.size(), 12u);
  for (const auto& o : obs) {
    EXPECT_FALSE(o.lo_open);
    EXPECT_FALSE(o.hi_open);
  }
}

TEST(RectDomain, ObstaclesComplementFreeIntervals) {
  const auto W = PolyCurve::from_points({{0, 0}, {4, 0}});
  const auto T = PolyCurve::from_points({{0, 1}, {4, 1}});
  const double r = 1.5;
  const auto d = build_rect_domain(W, T, r);
  for (std::size_t c = 1; c <= 2; ++c) {
    const auto f = free_interval_on_edge(T.vertex(1), T.vertex(2), W.vertex(c), r);
    ASSERT_TRUE(f);
    ASSERT_TRUE(d.vertical(c, 1));
    EXPECT_DOUBLE_EQ(d.vertical(c, 1)->lo, 1.0 + f->lo);
    EXPECT_DOUBLE_EQ(d.vertical(c, 1)->hi, 1.0 + f->hi);
  }
  double free_len = 0, obstacle_len = 0;
  for (const auto& o : d.obstacles()) obstacle_len += o.hi - o.lo;
  for (auto& iv : d.vert) free_len += iv ? iv->length() : 0;
  for (auto& iv : d.horiz) free_len += iv ? iv->length() : 0;
  EXPECT_NEAR(free_len + obstacle_len, 4.0, 1e-12);
}

TEST(RectDomain, SliceMatchesDirectBuild) {
  std::mt19937_64 rng(50);
  const auto S = test::random_walk(rng, 7, 2);
  const auto T = test::random_walk(rng, 6, 2);
  const auto full = build_rect_domain(S, T, 1.2);
  for (std::size_t i = 1; i <= 6; ++i)
    for (std::size_t w = 1; i + w - 1 <= 7 && w <= 4; ++w) {
      const auto W = S.subcurve(static_cast<double>(i), static_cast<double>(i + w - 1));
      const auto direct = build_rect_domain(W, T, 1.2);
      const auto sl = full.slice(i, w);
      EXPECT_EQ(sl.vert, direct.vert);
      ASSERT_EQ(sl.horiz.size(), direct.horiz.size());
      for (std::size_t k = 0; k < sl.horiz.size(); ++k) {
        ASSERT_EQ(sl.horiz[k].has_value(), direct.horiz[k].has_value()) << i << " " << w;
        if (sl.horiz[k]) {
          EXPECT_NEAR(sl.horiz[k]->lo, direct.horiz[k]->lo, 1e-12);
          EXPECT_NEAR(sl.horiz[k]->hi, direct.horiz[k]->hi, 1e-12);
        }
      }
    }
}

TEST(ReachGraph, FreeSquareCornerToCorner) {
  const auto W = PolyCurve::from_points({{0, 0}, {1, 0}});
  const auto T = PolyCurve::from_points({{0, 0}, {1, 0}, {0.5, 0}});
  const auto d = build_rect_domain(W, T, 10.0);
  const auto g = build_reach_graph(d, {{1, 1}, {2, 3}});
  const auto m = reachability_matrix(g);
  EXPECT_TRUE(m[0][1]);
  EXPECT_FALSE(m[1][0]);
}

TEST(ReachGraph, SeparatingColumnBlocks) {
  // W: far excursion in the middle, nothing on T comes close to it
  const auto W = PolyCurve::from_points({{0, 0}, {0, 0}, {100, 0}, {0, 0}, {0, 0}});
  const auto T = PolyCurve::from_points({{0, 0}, {0.5, 0}, {0, 0}});
  const auto d = build_rect_domain(W, T, 1.0);
  const auto g = build_reach_graph(d, {{1, 1}, {2, 1.5}, {4, 1}, {5, 3}});
  const auto m = reachability_matrix(g);
  EXPECT_TRUE(m[0][1]);
  EXPECT_TRUE(m[2][3]);
  EXPECT_FALSE(m[0][2]);
  EXPECT_FALSE(m[0][3]);
  EXPECT_FALSE(m[1][3]);
}

TEST(ReachGraph, RejectsObstaclePoints) {
  const auto W = PolyCurve::from_points({{0, 0}, {1, 0}});
  const auto T = PolyCurve::from_points({{0, 0}, {10, 0}});
  const auto d = build_rect_domain(W, T, 1.0);
  EXPECT_THROW(build_reach_graph(d, {{1, 1.9}}), InputError);
  EXPECT_THROW(build_reach_graph(d, {{0.5, 1}}), InputError);
  EXPECT_NO_THROW(build_reach_graph(d, {{1, 1.05}}));
}

TEST(ReachGraph, StaircaseMatchesOracle) {
  const auto W = PolyCurve::from_points({{0, 0}, {2, 0}, {2, 2}, {4, 2}});
  const auto T = PolyCurve::from_points({{0, 0.3}, {2, 0.3}, {2.3, 2}, {4, 2.3}});
  const double r = 0.6;
  std::vector<CriticalPoint> Z;
  for (double x : {1.0, 2.0, 3.0, 4.0})
    for (const auto& cp : critical_points_on_line(W, T, x, r)) Z.push_back(cp);
  ASSERT_GE(Z.size(), 6u);
  const auto g = build_reach_graph(build_rect_domain(W, T, r), Z);
  const auto expect = oracle::oracle_reach_matrix(W, T, r, coords(Z));
  EXPECT_EQ(reachability_matrix(g), expect);
}

TEST(ReachGraph, IsDagWithMonotoneArcs) {
  std::mt19937_64 rng(52);
  const auto W = test::random_walk(rng, 4, 2);
  const auto T = test::random_walk(rng, 8, 2);
  const double r = 1.2;
  const auto Z = random_z(rng, W, T, r, 20);
  const auto g = build_reach_graph(build_rect_domain(W, T, r), Z);
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    for (auto t : g.out[v]) {
      EXPECT_LE(g.vertices[v].x, g.vertices[t].x);
      EXPECT_LE(g.vertices[v].y, g.vertices[t].y);
      EXPECT_TRUE(g.vertices[v].x == g.vertices[t].x || g.vertices[v].y == g.vertices[t].y ||
                  v < g.base_count || t < g.base_count);
    }
  EXPECT_EQ(sweep_order(g).size(), g.vertices.size());
}

TEST(ReachGraphProperty, NaiveAndDivideConquerAgreeWithOracle) {
  std::mt19937_64 rng(53);
  int instances = 0, nonempty = 0;
  for (int it = 0; it < 120; ++it) {
    const auto W = test::random_walk(rng, 1 + rng() % 4, 2);
    const auto T = test::random_walk(rng, 1 + rng() % 8, 2);
    const double r = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    const auto Z = random_z(rng, W, T, r, 20);
    if (Z.empty()) continue;
    const auto d = build_rect_domain(W, T, r);
    const auto m1 = reachability_matrix(build_reach_graph(d, Z));
    const auto m2 = reachability_matrix(reach_graph_naive(d, Z));
    ASSERT_EQ(m1, m2) << "it=" << it;
    const auto expect = oracle::oracle_reach_matrix(W, T, r, coords(Z));
    ASSERT_EQ(m1, expect) << "it=" << it;
    ++instances;
    for (std::size_t a = 0; a < Z.size(); ++a)
      for (std::size_t b = 0; b < Z.size(); ++b) nonempty += (a != b && m1[a][b]);
  }
  EXPECT_GT(instances, 80);
  EXPECT_GT(nonempty, 100);
}

TEST(Annotation, SingleStartFreeDomain) {
  const auto W = PolyCurve::from_points({{0, 0}, {1, 0}, {2, 0}});
  const auto T = PolyCurve::from_points({{0, 0}, {1, 0}, {2, 0}});
  const auto d = build_rect_domain(W, T, 100.0);
  const auto g = build_reach_graph(d, {{1, 2}, {3, 3}, {2, 1}});
  const auto ann = annotate_min_start(g, {g.z_vertex[0]});
  EXPECT_EQ(ann[g.z_vertex[0]], 2.0);
  EXPECT_EQ(ann[g.z_vertex[1]], 2.0);
  EXPECT_TRUE(std::isinf(ann[g.z_vertex[2]]));
  for (std::size_t v = 0; v < g.base_count; ++v) {
    const bool up_right = g.vertices[v].x >= 1 && g.vertices[v].y >= 2;
    EXPECT_EQ(std::isinf(ann[v]), !up_right);
  }
}

TEST(Annotation, NoStarts) {
  const auto W = PolyCurve::from_points({{0, 0}, {1, 0}});
  const auto g = build_reach_graph(build_rect_domain(W, W, 1.0), {{1, 1}, {2, 2}});
  for (double a : annotate_min_start(g, {})) EXPECT_TRUE(std::isinf(a));
}

TEST(AnnotationProperty, MatchesPerSourceTraversal) {
  std::mt19937_64 rng(54);
  for (int it = 0; it < 60; ++it) {
    const auto W = test::random_walk(rng, 2 + rng() % 3, 2);
    const auto T = test::random_walk(rng, 2 + rng() % 7, 2);
    const double r = 1.3;
    const auto Z = random_z(rng, W, T, r, 20);
    if (Z.empty()) continue;
    const auto g = build_reach_graph(build_rect_domain(W, T, r), Z);
    std::vector<std::uint32_t> starts;
    for (std::size_t k = 0; k < Z.size(); k += 2) starts.push_back(g.z_vertex[k]);
    const auto ann = annotate_min_start(g, starts);
    const auto m = reachability_matrix(g);
    for (std::size_t b = 0; b < Z.size(); ++b) {
      double expect = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < Z.size(); a += 2)
        if (m[a][b]) expect = std::min(expect, g.vertices[g.z_vertex[a]].y);
      EXPECT_EQ(ann[g.z_vertex[b]], expect);
    }
  }
}
