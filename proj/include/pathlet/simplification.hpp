#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "pathlet/frechet.hpp"
#include "pathlet/geometry.hpp"

namespace pathlet {

/// A curve-restricted 2Δ-simplification S of T. Vertex k of S is T(breakpoints[k-1]),
/// and edge k of S is matched to T[breakpoints[k-1], breakpoints[k]].
struct Simplification {
  PolyCurve curve;
  std::vector<double> breakpoints;

  [[nodiscard]] std::size_t size() const { return breakpoints.size(); }
};

namespace detail {

inline PolyCurve segment_curve(const Point& a, const Point& b) {
  return PolyCurve::from_points({a, b});
}

/// Orthonormal frame of a 2-plane through `origin` that contains the two
/// direction vectors (or any plane containing them when they are dependent).
struct PlaneFrame {
  Point origin;
  Point e1;
  Point e2;

  [[nodiscard]] std::array<double, 2> project(PointView p, double* residual2 = nullptr) const {
    double x = 0.0, y = 0.0, r = 0.0;
    for (std::size_t k = 0; k < origin.size(); ++k) {
      const double w = p[k] - origin[k];
      x += w * e1[k];
      y += w * e2[k];
      r += w * w;
    }
    if (residual2) *residual2 = std::max(0.0, r - x * x - y * y);
    return {x, y};
  }
};

inline bool orthonormalize_against(Point& v, const Point& basis) {
  const double proj = dot(v, basis);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= proj * basis[k];
  const double len = std::sqrt(dot(v, v));
  if (len <= 1e-12) return false;
  for (double& c : v) c /= len;
  return true;
}

inline PlaneFrame plane_through(PointView origin, PointView p, PointView q) {
  const std::size_t d = origin.size();
  PlaneFrame f{Point(origin.begin(), origin.end()), Point(d, 0.0), Point(d, 0.0)};
  std::vector<Point> candidates;
  Point edge(d), to_p(d), to_q(d);
  for (std::size_t k = 0; k < d; ++k) {
    edge[k] = q[k] - p[k];
    to_p[k] = p[k] - origin[k];
    to_q[k] = q[k] - origin[k];
  }
  candidates = {edge, to_p, to_q};

  bool have_e1 = false;
  for (auto& c : candidates) {
    const double len = std::sqrt(dot(c, c));
    if (len > 1e-12) {
      for (std::size_t k = 0; k < d; ++k) f.e1[k] = c[k] / len;
      have_e1 = true;
      break;
    }
  }
  if (!have_e1) f.e1[0] = 1.0;

  for (auto c : candidates) {
    const double len = std::sqrt(dot(c, c));
    if (len <= 1e-12) continue;
    for (double& x : c) x /= len;
    if (orthonormalize_against(c, f.e1) && std::abs(dot(c, f.e1)) < 1e-9) {
      f.e2 = c;
      return f;
    }
  }
  // Collinear configuration: use the coordinate axis least parallel to e1.
  std::size_t axis = 0;
  for (std::size_t k = 1; k < d; ++k)
    if (std::abs(f.e1[k]) < std::abs(f.e1[axis])) axis = k;
  Point c(d, 0.0);
  c[axis] = 1.0;
  orthonormalize_against(c, f.e1);
  f.e2 = c;
  return f;
}

/// Local parameters s in [0, 1] of the planar segment e0 -> e1 whose points p
/// lie in the wedge { p : segment origin->p meets disk(center, radius) }.
/// The wedge is the disk joined with the tangent cone beyond the tangent chord.
inline std::optional<ParamInterval> wedge_interval(std::array<double, 2> e0,
                                                   std::array<double, 2> e1,
                                                   std::array<double, 2> center,
                                                   double radius) {
  const double D = std::hypot(center[0], center[1]);
  if (D <= radius) return ParamInterval{0.0, 1.0};

  std::optional<ParamInterval> acc = free_interval_on_edge(e0, e1, center, radius);

  // Cone through the tangents, cut by the far side of the tangent chord.
  const double ux = center[0] / D, uy = center[1] / D;
  const double sa = radius / D;
  const double ca = std::sqrt(std::max(0.0, 1.0 - sa * sa));
  const std::array<double, 2> rp{ux * ca - uy * sa, ux * sa + uy * ca};
  const std::array<double, 2> rm{ux * ca + uy * sa, -ux * sa + uy * ca};
  struct Half {
    double nx, ny, off;
  };
  const std::array<Half, 3> halves{Half{rp[1], -rp[0], 0.0}, Half{-rm[1], rm[0], 0.0},
                                   Half{ux, uy, (D * D - radius * radius) / D}};
  double lo = 0.0, hi = 1.0;
  for (const auto& h : halves) {
    const double g0 = h.nx * e0[0] + h.ny * e0[1] - h.off;
    const double g1 = h.nx * e1[0] + h.ny * e1[1] - h.off;
    const double slope = g1 - g0;
    if (slope == 0.0) {
      if (g0 < 0.0) return acc;
      continue;
    }
    const double root = -g0 / slope;
    if (slope > 0.0)
      lo = std::max(lo, root);
    else
      hi = std::min(hi, root);
  }
  if (lo <= hi) {
    if (!acc)
      acc = ParamInterval{lo, hi};
    else
      acc = ParamInterval{std::min(acc->lo, lo), std::max(acc->hi, hi)};
  }
  return acc;
}

inline bool in_b_set(const PolyCurve& T, double a, double b, double delta, double eps) {
  const PolyCurve seg = segment_curve(T.eval(a), T.eval(b));
  return frechet_decide(seg, T.subcurve(a, b), 2.0 * delta, eps);
}

}  // namespace detail

/// Largest b in [max(i, a), i + 1] with d_F(T(a)T(b), T[a, b]) <= 2 delta, or
/// nothing when the edge does not meet that set.
///
/// Each integer j in [a, i] contributes the wedge of points p for which the
/// segment T(a)p meets the ball of radius 2 delta around T(j), cut to a plane
/// through T(a) and the edge. The candidate is the minimum over j of the last
/// edge parameter inside wedge j; it is then confirmed with the decision
/// procedure, backing off by parameter bisection if rounding rejects it.
inline std::optional<double> max_b_on_edge(const PolyCurve& T, double a, std::size_t i,
                                           double delta, const Tolerance& tol = {}) {
  const double di = static_cast<double>(i);
  if (i < 1 || i + 1 > T.size() || a > di + 1.0) return std::nullopt;
  const double lo_b = std::max(di, a);
  const Point A = T.eval(a);
  const double R = 2.0 * delta + tol.geom;

  const auto frame = detail::plane_through(A, T.vertex(i), T.vertex(i + 1));
  const auto e0 = frame.project(T.vertex(i));
  const auto e1 = frame.project(T.vertex(i + 1));

  double cand = di + 1.0;
  double lower = lo_b;
  for (auto j = static_cast<std::size_t>(std::ceil(a)); j <= i; ++j) {
    double h2 = 0.0;
    const auto c = frame.project(T.vertex(j), &h2);
    const double r2 = R * R - h2;
    if (r2 < 0.0) return std::nullopt;
    const auto iv = detail::wedge_interval(e0, e1, c, std::sqrt(r2));
    if (!iv) return std::nullopt;
    const double bj_hi = di + iv->hi;
    const double bj_lo = di + iv->lo;
    if (bj_hi < lo_b) return std::nullopt;
    cand = std::min(cand, bj_hi);
    lower = std::max(lower, bj_lo);
  }
  if (cand < lo_b) return std::nullopt;

  if (detail::in_b_set(T, a, cand, delta, tol.geom)) return cand;

  // Rounding at the boundary: find the largest validated parameter below.
  double good = -1.0;
  const double probe = cand - tol.param;
  if (probe >= lo_b && detail::in_b_set(T, a, probe, delta, tol.geom)) {
    good = probe;
  } else if (lower <= cand && detail::in_b_set(T, a, std::min(lower, cand), delta, tol.geom)) {
    good = std::min(lower, cand);
  }
  if (good < 0.0) return std::nullopt;
  double bad = cand;
  while (bad - good > 0.5 * tol.param) {
    const double mid = 0.5 * (good + bad);
    if (detail::in_b_set(T, a, mid, delta, tol.geom))
      good = mid;
    else
      bad = mid;
  }
  return good;
}

/// A parameter b* > a that is the maximum of a connected component of the set
/// of b with d_F(T(a)T(b), T[a, b]) <= 2 delta, found by exponential and then
/// binary search over the edges of T.
inline double next_breakpoint(const PolyCurve& T, double a, double delta,
                              const Tolerance& tol = {}) {
  const std::size_t n = T.size();
  if (!(a < static_cast<double>(n))) return static_cast<double>(n);
  const auto first = static_cast<std::size_t>(std::floor(a));

  std::size_t full = 0;  // last edge known to be fully contained (0: none yet)
  std::size_t empty = 0;  // first edge known to miss the set (0: none yet)
  std::size_t step = 1;
  std::size_t i = first;
  for (;;) {
    const auto b = max_b_on_edge(T, a, i, delta, tol);
    if (!b) {
      empty = i;
      break;
    }
    if (*b < static_cast<double>(i + 1)) return *b;
    if (i + 1 == n) return static_cast<double>(n);
    full = i;
    i = std::min(first + step, n - 1);
    if (i <= full) i = full + 1;
    step *= 2;
  }
  if (full == 0) return static_cast<double>(first + 1);  // unreachable in exact arithmetic
  while (empty - full > 1) {
    const std::size_t mid = full + (empty - full) / 2;
    const auto b = max_b_on_edge(T, a, mid, delta, tol);
    if (!b) {
      empty = mid;
    } else if (*b < static_cast<double>(mid + 1)) {
      return *b;
    } else {
      full = mid;
    }
  }
  return static_cast<double>(full + 1);
}

/// Greedy pathlet-preserving simplification: starts at T(1), repeatedly jumps
/// to the next component maximum, ends at T(n).
inline Simplification build_simplification(const PolyCurve& T, double delta,
                                           const Tolerance& tol = {}) {
  if (T.empty()) throw InputError("cannot simplify an empty curve");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InputError("delta must be finite and >= 0");
  Simplification s;
  const double n = T.last_param();
  double a = 1.0;
  s.breakpoints.push_back(a);
  while (a < n) {
    a = next_breakpoint(T, a, delta, tol);
    s.breakpoints.push_back(a);
  }
  std::vector<Point> pts;
  pts.reserve(s.breakpoints.size());
  for (double b : s.breakpoints) pts.push_back(T.eval(b));
  s.curve = PolyCurve::from_points(pts);
  return s;
}

/// Checks the edge-wise 2Δ bound and greedy maximality of every breakpoint.
inline bool verify_simplification(const PolyCurve& T, const Simplification& S, double delta,
                                  const Tolerance& tol = {}) {
  const auto& bp = S.breakpoints;
  if (bp.empty() || S.curve.size() != bp.size()) return false;
  if (bp.front() != 1.0 || bp.back() != T.last_param()) return false;
  for (std::size_t k = 0; k < bp.size(); ++k) {
    if (k > 0 && !(bp[k] > bp[k - 1])) return false;
    if (distance(S.curve.vertex(k + 1), T.eval(bp[k])) > tol.geom) return false;
  }
  for (std::size_t k = 1; k < bp.size(); ++k) {
    const PolyCurve seg = PolyCurve::from_points(
        {Point(S.curve.vertex(k).begin(), S.curve.vertex(k).end()),
         Point(S.curve.vertex(k + 1).begin(), S.curve.vertex(k + 1).end())});
    if (!frechet_decide(seg, T.subcurve(bp[k - 1], bp[k]), 2.0 * delta, tol.geom)) return false;
    if (bp[k] < T.last_param()) {
      const double beyond = std::min(T.last_param(), bp[k] + 10.0 * tol.param);
      if (detail::in_b_set(T, bp[k - 1], beyond, delta, tol.geom)) return false;
    }
  }
  return true;
}

}  // namespace pathlet
