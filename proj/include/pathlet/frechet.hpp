#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "pathlet/geometry.hpp"

namespace pathlet {

namespace detail {

inline double max_vertex_distance(PointView p, const PolyCurve& q) {
  double m = 0.0;
  for (std::size_t k = 1; k <= q.size(); ++k) m = std::max(m, distance(p, q.vertex(k)));
  return m;
}

}  // namespace detail

/// Decides d_F(P, Q) <= delta + eps by propagating reachable intervals over
/// the cell boundaries of the free space diagram, one column at a time.
inline bool frechet_decide(const PolyCurve& P, const PolyCurve& Q, double delta,
                           double eps = 0.0) {
  if (P.empty() || Q.empty()) throw InputError("frechet_decide on an empty curve");
  const double limit = delta + eps;
  if (P.size() == 1) return detail::max_vertex_distance(P.vertex(1), Q) <= limit;
  if (Q.size() == 1) return detail::max_vertex_distance(Q.vertex(1), P) <= limit;
  if (distance(P.vertex(1), Q.vertex(1)) > limit) return false;
  if (distance(P.vertex(P.size()), Q.vertex(Q.size())) > limit) return false;

  using Iv = std::optional<ParamInterval>;
  const std::size_t p = P.size();
  const std::size_t q = Q.size();

  // left[j]: reachable part of the vertical boundary at the current column's
  // x, inside row j (local y in [0, 1]).
  std::vector<Iv> left(q - 1);
  {
    bool open = true;
    for (std::size_t j = 1; j < q; ++j) {
      Iv f = open ? free_interval_on_edge(Q.vertex(j), Q.vertex(j + 1), P.vertex(1), limit, 0.0)
                  : Iv{};
      if (f && f->lo > 0.0) f.reset();
      left[j - 1] = f;
      open = f && f->hi >= 1.0;
    }
  }
  bool bottom_open = true;  // bottom boundary y = 1 is reachable from (1, 1)
  for (std::size_t i = 1; i < p; ++i) {
    // bottom: reachable part of the horizontal boundary y = 1 in column i
    Iv bottom;
    if (bottom_open) {
      bottom = free_interval_on_edge(P.vertex(i), P.vertex(i + 1), Q.vertex(1), limit, 0.0);
      if (bottom && bottom->lo > 0.0) bottom.reset();
      bottom_open = bottom && bottom->hi >= 1.0;
    }
    std::vector<Iv> right(q - 1);
    for (std::size_t j = 1; j < q; ++j) {
      const Iv& lf = left[j - 1];
      // right boundary of cell (i, j)
      if (lf || bottom) {
        Iv fr = free_interval_on_edge(Q.vertex(j), Q.vertex(j + 1), P.vertex(i + 1), limit, 0.0);
        if (fr && !bottom) {
          fr->lo = std::max(fr->lo, lf->lo);
          if (fr->lo > fr->hi) fr.reset();
        }
        right[j - 1] = fr;
      }
      // top boundary of cell (i, j) becomes next row's bottom
      Iv top;
      if (lf || bottom) {
        top = free_interval_on_edge(P.vertex(i), P.vertex(i + 1), Q.vertex(j + 1), limit, 0.0);
        if (top && !lf) {
          top->lo = std::max(top->lo, bottom->lo);
          if (top->lo > top->hi) top.reset();
        }
      }
      bottom = top;
    }
    if (i + 1 == p) {
      // the end corner (p, q): reached along the last column's right edge,
      // or along the top edge of the last cell
      const Iv& last_right = right[q - 2];
      if (last_right && last_right->hi >= 1.0) return true;
      return bottom && bottom->hi >= 1.0;
    }
    left = std::move(right);
  }
  return false;
}

}  // namespace pathlet
