#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pathlet/coverage_index.hpp"
#include "pathlet/parallel.hpp"
#include "pathlet/pathlet_vertex.hpp"
#include "pathlet/reachability.hpp"
#include "pathlet/types.hpp"
#include "pathlet/universe.hpp"

namespace pathlet {

/// Critical x-coordinates x_1 < ... < x_m of FSD(e, T) for a two-vertex curve
/// e, with the component endpoints on each line x = x_i.
struct SubedgeCriticalSet {
  std::vector<double> xs;
  std::vector<std::vector<CriticalPoint>> points;
  bool reversed = false;

  [[nodiscard]] std::size_t size() const { return xs.size(); }
  [[nodiscard]] std::size_t total_points() const {
    std::size_t s = 0;
    for (const auto& p : points) s += p.size();
    return s;
  }
};

inline SubedgeCriticalSet subedge_critical_set(const PolyCurve& e, const PolyCurve& T,
                                               double delta_prime, const Tolerance& tol = {},
                                               bool reversed = false) {
  if (e.size() != 2) throw InputError("subedge reference must have two vertices");
  SubedgeCriticalSet c;
  c.reversed = reversed;
  c.xs = critical_xs_for_column(e, T, 1, delta_prime, tol);
  for (double x : c.xs) c.points.push_back(critical_points_on_line(e, T, x, delta_prime, tol));
  return c;
}

/// Places a subedge reference of edge k of S (local x in [1, 2]) in S's
/// parameters; reversed references run from the larger parameter down.
inline void set_subedge_span(Pathlet& p, std::size_t k, double x0, double x1, bool reversed) {
  const double base = static_cast<double>(k);
  if (!reversed) {
    p.from = base + (x0 - 1.0);
    p.to = base + (x1 - 1.0);
  } else {
    p.from = base + 2.0 - x0;
    p.to = base + 2.0 - x1;
  }
}

/// Pathlets (e[x_i, x_{i + 2^j}], I_j) for all j with i + 2^j <= m (i is
/// 1-based), unscored. `edge` is the index of e in S, used only to place the
/// reference in S's parameters.
inline std::vector<Pathlet> subedge_candidates_at(const PolyCurve& e, const PolyCurve& T,
                                                  const RectDomain& domain,
                                                  const SubedgeCriticalSet& crit, std::size_t i,
                                                  const Tolerance& tol = {},
                                                  std::size_t edge = 1) {
  std::vector<Pathlet> out;
  const std::size_t m = crit.size();
  std::vector<std::size_t> ends;
  for (std::size_t step = 1; i + step <= m; step *= 2) ends.push_back(i + step);
  if (ends.empty()) return out;

  std::vector<CriticalPoint> Z = crit.points[i - 1];
  const std::size_t start_count = Z.size();
  std::vector<std::size_t> owner(start_count, 0);  // 0: start line, else 1 + index into ends
  for (std::size_t k = 0; k < ends.size(); ++k)
    for (const auto& cp : crit.points[ends[k] - 1]) {
      Z.push_back(cp);
      owner.push_back(k + 1);
    }
  out.resize(ends.size());
  for (std::size_t k = 0; k < ends.size(); ++k) {
    auto& p = out[k];
    p.kind = PathletKind::kSubedge;
    p.reference = e.subcurve(crit.xs[i - 1], crit.xs[ends[k] - 1]);
    set_subedge_span(p, edge, crit.xs[i - 1], crit.xs[ends[k] - 1], crit.reversed);
  }
  if (start_count == 0) return out;

  const auto g = build_reach_graph(domain, Z, tol);
  std::vector<std::uint32_t> starts;
  std::vector<double> start_y;
  for (std::size_t k = 0; k < start_count; ++k) {
    starts.push_back(g.z_vertex[k]);
    start_y.push_back(Z[k].y);
  }
  const auto ann = annotate_min_start(g, starts, start_y);
  for (std::size_t k = start_count; k < Z.size(); ++k) {
    const double a = ann[g.z_vertex[k]];
    if (std::isfinite(a)) out[owner[k] - 1].intervals.push_back({a, Z[k].y});
  }
  return out;
}

/// Best of the power-of-two candidates starting at x_i; ties go to smaller j.
inline Pathlet best_subedge_pathlet_at(const PolyCurve& e, const PolyCurve& T,
                                       const SubedgeCriticalSet& crit, std::size_t i,
                                       const CoverageIndex& index, double delta_prime,
                                       const Tolerance& tol = {}, std::size_t edge = 1) {
  const auto domain = build_rect_domain(e, T, delta_prime, tol);
  auto c = subedge_candidates_at(e, T, domain, crit, i, tol, edge);
  if (c.empty()) return {PathletKind::kSubedge};
  for (auto& p : c) p.score = index.residual_coverage(p.intervals);
  return std::move(c[argmax_score(c)]);
}

/// Every subedge candidate of edge k of S in one orientation, in (i, j) order.
inline std::vector<Pathlet> subedge_candidates_for_edge(const PolyCurve& S, const PolyCurve& T,
                                                        std::size_t k, bool reversed,
                                                        double delta_prime,
                                                        const Tolerance& tol = {}) {
  PolyCurve e = S.subcurve(static_cast<double>(k), static_cast<double>(k + 1));
  if (reversed) e = e.reversed();
  const auto crit = subedge_critical_set(e, T, delta_prime, tol, reversed);
  const auto domain = build_rect_domain(e, T, delta_prime, tol);
  std::vector<Pathlet> out;
  for (std::size_t i = 1; i <= crit.size(); ++i) {
    auto c = subedge_candidates_at(e, T, domain, crit, i, tol, k);
    for (auto& p : c) out.push_back(std::move(p));
  }
  return out;
}

/// Best subedge pathlet over all edges of S and both orientations. Ties go to
/// the smaller edge index, then forward before reversed, then smaller i and j.
inline Pathlet best_subedge_pathlet(const PolyCurve& S, const PolyCurve& T, double delta_prime,
                                    const CoverageIndex& index, const Tolerance& tol = {}) {
  if (S.size() < 2) return {PathletKind::kSubedge};
  const std::size_t tasks = 2 * (S.size() - 1);
  std::vector<Pathlet> per(tasks, Pathlet{PathletKind::kSubedge});
  parallel_for(tasks, [&](std::size_t t) {
    auto c = subedge_candidates_for_edge(S, T, t / 2 + 1, t % 2 == 1, delta_prime, tol);
    if (c.empty()) return;
    for (auto& p : c) p.score = index.residual_coverage(p.intervals);
    per[t] = std::move(c[argmax_score(c)]);
  });
  return std::move(per[argmax_score(per)]);
}

}  // namespace pathlet
