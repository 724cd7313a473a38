#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "pathlet/geometry.hpp"
#include "pathlet/parallel.hpp"

namespace pathlet {

/// Which extreme point of a free-space cell produced a critical x-coordinate.
enum class ExtremeRole : std::uint8_t {
  kInteriorLeft,
  kInteriorRight,
  kBottomLeft,
  kBottomRight,
  kTopLeft,
  kTopRight,
  kLine,  // a point on a line chosen by the caller (e.g. an integer line)
};

struct CriticalPoint {
  double x = 0.0;
  double y = 0.0;
  ExtremeRole role = ExtremeRole::kLine;
};

struct CriticalX {
  double x = 0.0;
  ExtremeRole role = ExtremeRole::kLine;
};

/// The extreme x-coordinates of the free space inside cell (i, j) of FSD(W, T):
/// leftmost and rightmost points of the whole cell, of its bottom edge and of
/// its top edge. Nonexistent extremes are omitted.
inline std::vector<CriticalX> cell_extremes(const PolyCurve& W, const PolyCurve& T, std::size_t i,
                                            std::size_t j, double radius,
                                            const Tolerance& tol = {}) {
  std::vector<CriticalX> out;
  const double base = static_cast<double>(i);
  auto add = [&](const std::optional<ParamInterval>& iv, ExtremeRole l, ExtremeRole r) {
    if (!iv) return;
    out.push_back({base + iv->lo, l});
    out.push_back({base + iv->hi, r});
  };
  add(segment_capsule_interval(W.vertex(i), W.vertex(i + 1), T.vertex(j), T.vertex(j + 1),
                               radius, tol.geom),
      ExtremeRole::kInteriorLeft, ExtremeRole::kInteriorRight);
  add(free_interval_on_edge(W.vertex(i), W.vertex(i + 1), T.vertex(j), radius, tol.geom),
      ExtremeRole::kBottomLeft, ExtremeRole::kBottomRight);
  add(free_interval_on_edge(W.vertex(i), W.vertex(i + 1), T.vertex(j + 1), radius, tol.geom),
      ExtremeRole::kTopLeft, ExtremeRole::kTopRight);
  return out;
}

/// Sorts and merges values closer than `gap` (keeping the first of a run).
inline void sort_dedup(std::vector<double>& v, double gap) {
  std::sort(v.begin(), v.end());
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (w > 0 && v[r] - v[w - 1] <= gap) continue;
    v[w++] = v[r];
  }
  v.resize(w);
}

/// Union of the extreme x-coordinates over all cells of column i.
inline std::vector<double> critical_xs_for_column(const PolyCurve& W, const PolyCurve& T,
                                                  std::size_t i, double radius,
                                                  const Tolerance& tol = {}) {
  std::vector<double> xs;
  for (std::size_t j = 1; j < T.size(); ++j)
    for (const auto& c : cell_extremes(W, T, i, j, radius, tol)) xs.push_back(c.x);
  if (T.size() == 1) {
    // degenerate diagram without rows: the single horizontal line y = 1
    if (auto iv = free_interval_on_edge(W.vertex(i), W.vertex(i + 1), T.vertex(1), radius,
                                        tol.geom)) {
      xs.push_back(static_cast<double>(i) + iv->lo);
      xs.push_back(static_cast<double>(i) + iv->hi);
    }
  }
  sort_dedup(xs, 0.0);
  return xs;
}

/// Free y-intervals of FSD(W, T) on the vertical line at x, one per edge of T,
/// merged where consecutive rows meet at an integer y. Returns the maximal
/// connected components in ascending order.
inline std::vector<ParamInterval> free_components_on_line(const PolyCurve& W, const PolyCurve& T,
                                                          double x, double radius,
                                                          const Tolerance& tol = {}) {
  std::vector<ParamInterval> comps;
  const Point p = W.eval(x);
  if (T.size() == 1) {
    if (distance(p, T.vertex(1)) <= radius + tol.geom) comps.push_back({1.0, 1.0});
    return comps;
  }
  for (std::size_t j = 1; j < T.size(); ++j) {
    const auto iv = free_interval_on_edge(T.vertex(j), T.vertex(j + 1), p, radius, tol.geom);
    if (!iv) continue;
    const double dj = static_cast<double>(j);
    const ParamInterval y{dj + iv->lo, dj + iv->hi};
    if (!comps.empty() && comps.back().hi == dj && iv->lo == 0.0)
      comps.back().hi = y.hi;
    else
      comps.push_back(y);
  }
  return comps;
}

/// Endpoints of the connected components of FSD(W, T) on the line at x,
/// ascending in y. A single-point component contributes one point.
inline std::vector<CriticalPoint> critical_points_on_line(const PolyCurve& W, const PolyCurve& T,
                                                          double x, double radius,
                                                          const Tolerance& tol = {},
                                                          ExtremeRole role = ExtremeRole::kLine) {
  std::vector<CriticalPoint> out;
  for (const auto& c : free_components_on_line(W, T, x, radius, tol)) {
    out.push_back({x, c.lo, role});
    if (c.hi != c.lo) out.push_back({x, c.hi, role});
  }
  return out;
}

/// Interior-disjoint intervals [boundaries[t], boundaries[t+1]] covering [1, n].
struct Universe {
  std::vector<double> boundaries;

  [[nodiscard]] std::size_t size() const {
    return boundaries.size() < 2 ? (boundaries.empty() ? 0 : 1) : boundaries.size() - 1;
  }
  [[nodiscard]] ParamInterval interval(std::size_t t) const {
    if (boundaries.size() == 1) return {boundaries[0], boundaries[0]};
    return {boundaries[t], boundaries[t + 1]};
  }
};

struct UniverseBuild {
  Universe universe;
  std::vector<CriticalPoint> points;  // filled only when requested
};

/// Builds the universe from the critical points of FSD(S, T) at radius
/// delta_prime. Columns are processed independently and merged by sorting;
/// y-coordinates closer than tol.param collapse into one boundary.
inline UniverseBuild build_universe(const PolyCurve& S, const PolyCurve& T, double delta_prime,
                                    const Tolerance& tol = {}, bool keep_points = false) {
  UniverseBuild out;
  const double n = T.last_param();
  if (T.size() <= 1) {
    out.universe.boundaries = {1.0};
    return out;
  }
  const std::size_t columns = S.size() > 0 ? S.size() - 1 : 0;
  struct ColumnResult {
    std::vector<double> ys;
    std::vector<CriticalPoint> pts;
  };
  std::vector<ColumnResult> per(columns);
  parallel_for(columns, [&](std::size_t c) {
    const std::size_t i = c + 1;
    auto& r = per[c];
    for (const auto& cx : critical_xs_for_column(S, T, i, delta_prime, tol)) {
      for (const auto& cp : critical_points_on_line(S, T, cx, delta_prime, tol)) {
        r.ys.push_back(cp.y);
        if (keep_points) r.pts.push_back(cp);
      }
    }
    sort_dedup(r.ys, 0.0);
  });
  std::vector<double> ys{1.0, n};
  for (auto& r : per) {
    ys.insert(ys.end(), r.ys.begin(), r.ys.end());
    if (keep_points) out.points.insert(out.points.end(), r.pts.begin(), r.pts.end());
  }
  sort_dedup(ys, tol.param);
  // keep 1 and n exact as the outer boundaries
  ys.front() = 1.0;
  if (ys.size() >= 2 && n - ys[ys.size() - 2] <= tol.param && ys.size() > 2) ys.pop_back();
  ys.back() = n;
  if (ys.size() < 2) ys.push_back(n);
  out.universe.boundaries = std::move(ys);
  return out;
}

}  // namespace pathlet
