#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pathlet/coverage_index.hpp"
#include "pathlet/parallel.hpp"
#include "pathlet/reachability.hpp"
#include "pathlet/types.hpp"
#include "pathlet/universe.hpp"

namespace pathlet {

/// Number of vertices of the widest reference anchored at vertex i.
inline std::size_t vertex_window(std::size_t s_size, std::size_t i, std::size_t ell) {
  return std::min(ell, s_size - i + 1);
}

/// Component endpoints of FSD(S, T) on the integer lines x = i .. i + w - 1,
/// in S's parameters.
inline std::vector<CriticalPoint> vertex_critical_points(const PolyCurve& S, const PolyCurve& T,
                                                         std::size_t i, std::size_t ell,
                                                         double delta_prime,
                                                         const Tolerance& tol = {}) {
  std::vector<CriticalPoint> Z;
  const std::size_t w = vertex_window(S.size(), i, ell);
  for (std::size_t j = 0; j < w; ++j) {
    const auto pts =
        critical_points_on_line(S, T, static_cast<double>(i + j), delta_prime, tol);
    Z.insert(Z.end(), pts.begin(), pts.end());
  }
  return Z;
}

/// Reference-optimal pathlets (S[i, i + j], I_j) for j = 1 .. w - 1, unscored.
/// `domain` is the rect domain of the full FSD(S, T).
inline std::vector<Pathlet> vertex_candidates_at(const PolyCurve& S, const PolyCurve& T,
                                                 const RectDomain& domain, std::size_t i,
                                                 std::size_t ell, double delta_prime,
                                                 const Tolerance& tol = {}) {
  std::vector<Pathlet> out;
  const std::size_t w = vertex_window(S.size(), i, ell);
  if (w < 2) return out;
  auto Z = vertex_critical_points(S, T, i, ell, delta_prime, tol);
  const double shift = static_cast<double>(i) - 1.0;
  for (auto& z : Z) z.x -= shift;
  const auto g = build_reach_graph(domain.slice(i, w), Z, tol);
  std::vector<std::uint32_t> starts;
  std::vector<double> start_y;
  for (std::size_t k = 0; k < Z.size(); ++k)
    if (Z[k].x == 1.0) {
      starts.push_back(g.z_vertex[k]);
      start_y.push_back(Z[k].y);
    }
  const auto ann = annotate_min_start(g, starts, start_y);
  out.resize(w - 1);
  for (std::size_t j = 1; j < w; ++j) {
    auto& p = out[j - 1];
    p.kind = PathletKind::kVertex;
    p.from = static_cast<double>(i);
    p.to = static_cast<double>(i + j);
    p.reference = S.subcurve(p.from, p.to);
  }
  for (std::size_t k = 0; k < Z.size(); ++k) {
    const auto j = static_cast<std::size_t>(Z[k].x) - 1;
    if (j == 0) continue;
    const double a = ann[g.z_vertex[k]];
    if (std::isfinite(a)) out[j - 1].intervals.push_back({a, Z[k].y});
  }
  return out;
}

/// Index of the first candidate with the highest score.
inline std::size_t argmax_score(const std::vector<Pathlet>& c) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < c.size(); ++k)
    if (c[k].score > c[best].score) best = k;
  return best;
}

/// Best (S[i, i + j], I_j) over j by residual coverage; ties go to smaller j.
inline Pathlet best_vertex_pathlet_at(const PolyCurve& S, const PolyCurve& T, std::size_t i,
                                      std::size_t ell, double delta_prime,
                                      const CoverageIndex& index, const Tolerance& tol = {},
                                      const RectDomain* domain = nullptr) {
  const RectDomain local = domain ? RectDomain{} : build_rect_domain(S, T, delta_prime, tol);
  auto c = vertex_candidates_at(S, T, domain ? *domain : local, i, ell, delta_prime, tol);
  if (c.empty()) return {};
  for (auto& p : c) p.score = index.residual_coverage(p.intervals);
  return std::move(c[argmax_score(c)]);
}

/// Best vertex-to-vertex pathlet over all anchors i; ties go to smaller i.
inline Pathlet best_vertex_pathlet(const PolyCurve& S, const PolyCurve& T, std::size_t ell,
                                   double delta_prime, const CoverageIndex& index,
                                   const Tolerance& tol = {}) {
  if (S.size() < 2) return {};
  const auto domain = build_rect_domain(S, T, delta_prime, tol);
  std::vector<Pathlet> per(S.size() - 1);
  parallel_for(per.size(), [&](std::size_t k) {
    per[k] = best_vertex_pathlet_at(S, T, k + 1, ell, delta_prime, index, tol, &domain);
  });
  return std::move(per[argmax_score(per)]);
}

}  // namespace pathlet
