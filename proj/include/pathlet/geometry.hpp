#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pathlet {

/// Raised for malformed input (non-finite coordinates, mixed dimensions,
/// parameters outside a curve's domain).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical slack used throughout the pipeline.
///
/// `geom` is an absolute distance slack: a point is considered within radius
/// r of a center when its distance is at most r + geom. `param` is a slack on
/// curve parameters, used to merge nearly coincident breakpoints and to stop
/// parameter searches.
struct Tolerance {
  double geom = 1e-9;
  double param = 1e-7;

  /// Relative geometric slack turned into an absolute one for a point set
  /// with the given bounding-box diameter.
  static Tolerance scaled(double diameter, double rel_geom = 1e-9,
                          double param = 1e-7) {
    return Tolerance{rel_geom * (diameter > 0.0 ? diameter : 1.0), param};
  }
};

using Point = std::vector<double>;
using PointView = std::span<const double>;

inline double squared_distance(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

inline double distance(PointView a, PointView b) {
  return std::sqrt(squared_distance(a, b));
}

inline double dot(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline Point lerp(PointView a, PointView b, double t) {
  Point out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + t * (b[k] - a[k]);
  return out;
}

/// Closed interval of curve parameters.
struct ParamInterval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double length() const { return hi - lo; }
  [[nodiscard]] bool contains(double t) const { return lo <= t && t <= hi; }
  friend bool operator==(const ParamInterval&, const ParamInterval&) = default;
};

/// Piecewise-linear curve over the parameter domain [1, n], with vertex k at
/// parameter k. Coordinates are stored row-major in a flat buffer.
class PolyCurve {
 public:
  PolyCurve() = default;

  PolyCurve(std::size_t dim, std::vector<double> coords)
      : dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 1) throw InputError("curve dimension must be positive");
    if (coords_.size() % dim_ != 0)
      throw InputError("coordinate count is not a multiple of the dimension");
    for (double c : coords_)
      if (!std::isfinite(c)) throw InputError("non-finite coordinate");
  }

  static PolyCurve from_points(const std::vector<Point>& pts) {
    if (pts.empty()) return {};
    const std::size_t d = pts.front().size();
    std::vector<double> flat;
    flat.reserve(pts.size() * d);
    for (const auto& p : pts) {
      if (p.size() != d) throw InputError("points of mixed dimension");
      flat.insert(flat.end(), p.begin(), p.end());
    }
    return PolyCurve(d, std::move(flat));
  }

  [[nodiscard]] std::size_t size() const {
    return dim_ == 0 ? 0 : coords_.size() / dim_;
  }
  [[nodiscard]] bool empty() const { return size() == 0; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<double>& coords() const { return coords_; }

  /// Vertex at integer parameter k (1-based).
  [[nodiscard]] PointView vertex(std::size_t k) const {
    return {coords_.data() + (k - 1) * dim_, dim_};
  }

  [[nodiscard]] double last_param() const { return static_cast<double>(size()); }

  /// Point at parameter t in [1, n].
  [[nodiscard]] Point eval(double t) const {
    const double n = last_param();
    if (empty() || !(t >= 1.0 && t <= n))
      throw std::domain_error("curve parameter out of domain");
    const auto k = static_cast<std::size_t>(std::floor(t));
    if (static_cast<double>(k) == t || k >= size()) {
      const auto v = vertex(std::min(k, size()));
      return {v.begin(), v.end()};
    }
    return lerp(vertex(k), vertex(k + 1), t - static_cast<double>(k));
  }

  /// The subcurve P[a, b]; a == b yields a single-vertex curve.
  [[nodiscard]] PolyCurve subcurve(double a, double b) const {
    if (!(1.0 <= a && a <= b && b <= last_param()))
      throw std::domain_error("subcurve bounds out of domain");
    std::vector<double> flat;
    auto push = [&](const Point& p) { flat.insert(flat.end(), p.begin(), p.end()); };
    push(eval(a));
    if (a == b) return PolyCurve(dim_, std::move(flat));
    for (auto k = static_cast<std::size_t>(std::floor(a)) + 1;
         static_cast<double>(k) < b; ++k) {
      if (static_cast<double>(k) <= a) continue;
      const auto v = vertex(k);
      flat.insert(flat.end(), v.begin(), v.end());
    }
    push(eval(b));
    return PolyCurve(dim_, std::move(flat));
  }

  [[nodiscard]] PolyCurve reversed() const {
    std::vector<double> flat;
    flat.reserve(coords_.size());
    for (std::size_t k = size(); k >= 1; --k) {
      const auto v = vertex(k);
      flat.insert(flat.end(), v.begin(), v.end());
    }
    return PolyCurve(dim_, std::move(flat));
  }

  /// Diameter of the axis-aligned bounding box.
  [[nodiscard]] double bbox_diameter() const {
    if (empty()) return 0.0;
    double s = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      double lo = coords_[c], hi = coords_[c];
      for (std::size_t k = 0; k < size(); ++k) {
        lo = std::min(lo, coords_[k * dim_ + c]);
        hi = std::max(hi, coords_[k * dim_ + c]);
      }
      s += (hi - lo) * (hi - lo);
    }
    return std::sqrt(s);
  }

  friend bool operator==(const PolyCurve&, const PolyCurve&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// The closed sub-interval of local parameters s in [0, 1] for which the point
/// p0 + s (p1 - p0) lies within `radius` (+ `eps`) of `center`.
///
/// Roots are taken at the exact radius; the slack only decides existence and
/// whether the segment endpoints are included, so a tangency reports a single
/// parameter.
inline std::optional<ParamInterval> free_interval_on_edge(PointView p0, PointView p1,
                                                          PointView center, double radius,
                                                          double eps = 0.0) {
  const std::size_t d = p0.size();
  double uu = 0.0, wu = 0.0, ww = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double u = p1[k] - p0[k];
    const double w = p0[k] - center[k];
    uu += u * u;
    wu += w * u;
    ww += w * w;
  }
  const double limit = radius + eps;
  if (uu <= 0.0) {
    if (std::sqrt(ww) <= limit) return ParamInterval{0.0, 1.0};
    return std::nullopt;
  }
  const double tm = std::clamp(-wu / uu, 0.0, 1.0);
  // closest point evaluated directly; the expanded quadratic cancels badly
  // near tangency
  double dmin2 = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double c = p0[k] + tm * (p1[k] - p0[k]) - center[k];
    dmin2 += c * c;
  }
  if (std::sqrt(dmin2) > limit) return std::nullopt;

  // Roots t0 +- sqrt((r^2 - perp^2) / uu) around the unclamped foot t0, with
  // perp^2 evaluated directly; the textbook discriminant loses ~sqrt(ulp).
  double lo = tm, hi = tm;
  const double t0 = -wu / uu;
  double perp2 = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double c = p0[k] + t0 * (p1[k] - p0[k]) - center[k];
    perp2 += c * c;
  }
  if (radius * radius > perp2) {
    const double half = std::sqrt((radius * radius - perp2) / uu);
    lo = std::min(tm, std::max(0.0, t0 - half));
    hi = std::max(tm, std::min(1.0, t0 + half));
  }
  if (std::sqrt(ww) <= limit) lo = 0.0;
  if (squared_distance(p1, center) <= limit * limit) hi = 1.0;
  return ParamInterval{lo, hi};
}

/// Local parameters s in [0, 1] of segment p0p1 whose points lie within
/// `radius` (+ `eps`) of segment q0q1. This is the x-extent of the free space
/// inside one cell of a free space diagram (line-capsule intersection).
inline std::optional<ParamInterval> segment_capsule_interval(PointView p0, PointView p1,
                                                             PointView q0, PointView q1,
                                                             double radius, double eps = 0.0) {
  std::optional<ParamInterval> acc;
  auto merge = [&](std::optional<ParamInterval> iv) {
    if (!iv) return;
    if (!acc) {
      acc = iv;
    } else {
      acc->lo = std::min(acc->lo, iv->lo);
      acc->hi = std::max(acc->hi, iv->hi);
    }
  };
  merge(free_interval_on_edge(p0, p1, q0, radius, eps));
  merge(free_interval_on_edge(p0, p1, q1, radius, eps));

  // Cylinder part: perpendicular distance to the supporting line of q0q1
  // while the projection stays inside the segment.
  const std::size_t d = p0.size();
  double vv = 0.0;
  for (std::size_t k = 0; k < d; ++k) vv += (q1[k] - q0[k]) * (q1[k] - q0[k]);
  if (vv > 0.0) {
    std::vector<double> a(d), b(d), v(d);
    double av = 0.0, bv = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      v[k] = q1[k] - q0[k];
      a[k] = p0[k] - q0[k];
      b[k] = p1[k] - p0[k];
      av += a[k] * v[k];
      bv += b[k] * v[k];
    }
    // projection parameter tau(s) = (av + s bv) / vv must lie in [0, 1]
    double slo = 0.0, shi = 1.0;
    if (bv == 0.0) {
      if (av < 0.0 || av > vv) slo = 1.0, shi = 0.0;
    } else {
      double s0 = -av / bv, s1 = (vv - av) / bv;
      if (s0 > s1) std::swap(s0, s1);
      slo = std::max(slo, s0);
      shi = std::min(shi, s1);
    }
    if (slo <= shi) {
      double aa = 0.0, ab = 0.0, bb = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double ap = a[k] - av / vv * v[k];
        const double bp = b[k] - bv / vv * v[k];
        aa += ap * ap;
        ab += ap * bp;
        bb += bp * bp;
      }
      const double lim2 = (radius + eps) * (radius + eps);
      const double scale = std::max({aa, bb, 1e-300});
      if (bb <= 1e-14 * scale) {
        // Parallel: perpendicular distance is (nearly) constant.
        const double mid = 0.5 * (slo + shi);
        if (aa + 2.0 * mid * ab + mid * mid * bb <= lim2)
          merge(ParamInterval{slo, shi});
      } else {
        const double sm = std::clamp(-ab / bb, slo, shi);
        const double dm = aa + 2.0 * sm * ab + sm * sm * bb;
        if (dm <= lim2) {
          double lo = sm, hi = sm;
          const double disc = ab * ab - bb * (aa - radius * radius);
          if (disc > 0.0) {
            const double sq = std::sqrt(disc);
            lo = std::min(sm, std::max(slo, (-ab - sq) / bb));
            hi = std::max(sm, std::min(shi, (-ab + sq) / bb));
          }
          merge(ParamInterval{lo, hi});
        }
      }
    }
  }
  return acc;
}

}  // namespace pathlet
