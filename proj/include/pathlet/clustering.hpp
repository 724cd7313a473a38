#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "pathlet/coverage_index.hpp"
#include "pathlet/frechet.hpp"
#include "pathlet/parallel.hpp"
#include "pathlet/pathlet_subedge.hpp"
#include "pathlet/pathlet_vertex.hpp"
#include "pathlet/simplification.hpp"
#include "pathlet/types.hpp"
#include "pathlet/universe.hpp"

namespace pathlet {

struct ClusterOptions {
  double rel_geom = 1e-9;  // geometric slack relative to the bounding-box diameter
  double eps_param = 1e-7;
};

struct Clustering {
  std::size_t n = 0;
  std::size_t ell = 0;
  double delta = 0.0;
  double delta_prime = 0.0;
  double effective_delta_prime = 0.0;  // delta_prime, or its inflation after a stall
  Tolerance tol;
  Simplification simplification;
  std::size_t universe_size = 0;
  std::vector<Pathlet> pathlets;
  std::vector<std::size_t> covered_per_iteration;  // universe intervals newly covered
  std::vector<std::size_t> residual_per_iteration;  // uncovered intervals after the commit
  bool inflated = false;                            // the stall retry was used
};

/// Neither candidate covers anything new although universe intervals remain.
class StallError : public std::runtime_error {
 public:
  StallError(const std::string& what, std::vector<ParamInterval> uncovered, Clustering partial)
      : std::runtime_error(what), uncovered(std::move(uncovered)), partial(std::move(partial)) {}
  std::vector<ParamInterval> uncovered;
  Clustering partial;
};

namespace detail {

/// All vertex candidates (by i, j) followed by all subedge candidates (by
/// edge, orientation, i, j). The greedy picks the first maximum in this order.
inline std::vector<Pathlet> all_candidates(const PolyCurve& S, const PolyCurve& T,
                                           std::size_t ell, double dp, const Tolerance& tol) {
  if (S.size() < 2) return {};
  const std::size_t edges = S.size() - 1;
  const auto domain = build_rect_domain(S, T, dp, tol);
  std::vector<std::vector<Pathlet>> per(3 * edges);
  parallel_for(per.size(), [&](std::size_t t) {
    if (t < edges)
      per[t] = vertex_candidates_at(S, T, domain, t + 1, ell, dp, tol);
    else
      per[t] = subedge_candidates_for_edge(S, T, (t - edges) / 2 + 1, (t - edges) % 2 == 1, dp,
                                           tol);
  });
  std::vector<Pathlet> out;
  for (auto& v : per)
    for (auto& p : v) out.push_back(std::move(p));
  return out;
}

/// Lazy greedy selection: scores only decrease as coverage grows, so a
/// candidate whose refreshed score still tops the queue is the true maximum.
class LazyGreedy {
 public:
  LazyGreedy(std::vector<Pathlet> candidates, const CoverageIndex& index)
      : cand_(std::move(candidates)) {
    parallel_for(cand_.size(), [&](std::size_t k) {
      cand_[k].score = index.residual_coverage(cand_[k].intervals);
    });
    for (std::size_t k = 0; k < cand_.size(); ++k) heap_.emplace(cand_[k].score, k);
  }

  /// Index of the best candidate (highest score, first in order), or npos if
  /// no candidates exist.
  std::size_t best(const CoverageIndex& index) {
    while (!heap_.empty()) {
      const auto [bound, k] = heap_.top();
      const std::size_t now = index.residual_coverage(cand_[k].intervals);
      if (now == bound) return k;
      heap_.pop();
      cand_[k].score = now;
      heap_.emplace(now, k);
    }
    return npos;
  }

  [[nodiscard]] const Pathlet& at(std::size_t k) const { return cand_[k]; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  struct Order {
    bool operator()(const std::pair<std::size_t, std::size_t>& a,
                    const std::pair<std::size_t, std::size_t>& b) const {
      // max score first, then smallest index
      return a.first < b.first || (a.first == b.first && a.second > b.second);
    }
  };
  std::vector<Pathlet> cand_;
  std::priority_queue<std::pair<std::size_t, std::size_t>,
                      std::vector<std::pair<std::size_t, std::size_t>>, Order>
      heap_;
};

/// Drops intervals contained in another one; the union is unchanged.
inline std::vector<ParamInterval> outermost(std::vector<ParamInterval> ivs) {
  std::sort(ivs.begin(), ivs.end(), [](const ParamInterval& a, const ParamInterval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi > b.hi);
  });
  std::vector<ParamInterval> out;
  for (const auto& iv : ivs)
    if (out.empty() || iv.hi > out.back().hi) out.push_back(iv);
  return out;
}

}  // namespace detail

/// Greedy (ell, 4 delta)-clustering of T: simplify, build the universe, then
/// repeatedly commit the candidate pathlet with the largest residual coverage.
inline Clustering cluster(const PolyCurve& T, std::size_t ell, double delta,
                          const ClusterOptions& opt = {}) {
  if (T.empty()) throw InputError("empty trajectory");
  if (ell < 2) throw InputError("ell must be at least 2");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InputError("delta must be finite and >= 0");
  Clustering c;
  c.n = T.size();
  c.ell = ell;
  c.delta = delta;
  c.delta_prime = 4.0 * delta;
  c.effective_delta_prime = c.delta_prime;
  c.tol = Tolerance::scaled(T.bbox_diameter(), opt.rel_geom, opt.eps_param);
  c.simplification = build_simplification(T, delta, c.tol);

  if (T.size() == 1) {
    Pathlet p;
    p.kind = PathletKind::kWhole;
    p.reference = T;
    p.intervals = {{1.0, 1.0}};
    p.score = 1;
    c.universe_size = 1;
    c.pathlets.push_back(p);
    c.covered_per_iteration.push_back(1);
    c.residual_per_iteration.push_back(0);
    return c;
  }

  const PolyCurve& S = c.simplification.curve;
  const auto U = build_universe(S, T, c.delta_prime, c.tol).universe;
  c.universe_size = U.size();
  CoverageIndex index(U, c.tol.param);
  auto greedy =
      std::make_unique<detail::LazyGreedy>(detail::all_candidates(S, T, ell, c.delta_prime, c.tol),
                                           index);
  while (index.uncovered_count() > 0) {
    std::size_t k = greedy->best(index);
    if (k == detail::LazyGreedy::npos || greedy->at(k).score == 0) {
      if (!c.inflated) {
        c.inflated = true;
        c.effective_delta_prime = c.delta_prime + 10.0 * c.tol.geom;
        greedy = std::make_unique<detail::LazyGreedy>(
            detail::all_candidates(S, T, ell, c.effective_delta_prime, c.tol), index);
        continue;
      }
      std::ostringstream msg;
      msg << "greedy stalled with " << index.uncovered_count() << " uncovered universe intervals";
      throw StallError(msg.str(), index.uncovered(), c);
    }
    Pathlet p = greedy->at(k);
    p.intervals = detail::outermost(std::move(p.intervals));
    const std::size_t added = index.commit(p.intervals);
    p.score = added;
    c.pathlets.push_back(std::move(p));
    c.covered_per_iteration.push_back(added);
    c.residual_per_iteration.push_back(index.uncovered_count());
  }
  return c;
}

struct ValidationFailure {
  std::string check;  // "frechet", "complexity", "coverage"
  std::size_t pathlet = 0;
  std::size_t interval = 0;
  std::string detail;
};

struct ValidationReport {
  std::size_t intervals_checked = 0;
  std::vector<ValidationFailure> failures;
  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Checks every matched interval against its reference at delta_prime (+ geom
/// slack), every reference's complexity, and that the intervals cover [1, n].
inline ValidationReport validate_clustering(const PolyCurve& T, const std::vector<Pathlet>& pathlets,
                                            std::size_t ell, double delta_prime,
                                            const Tolerance& tol) {
  ValidationReport r;
  std::vector<ParamInterval> all;
  for (std::size_t p = 0; p < pathlets.size(); ++p) {
    const auto& pl = pathlets[p];
    if (pl.reference.size() > ell && pl.kind != PathletKind::kWhole)
      r.failures.push_back({"complexity", p, 0,
                            "reference has " + std::to_string(pl.reference.size()) + " vertices"});
    for (std::size_t k = 0; k < pl.intervals.size(); ++k) {
      const auto& iv = pl.intervals[k];
      ++r.intervals_checked;
      all.push_back(iv);
      if (!(1.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= T.last_param())) {
        r.failures.push_back({"frechet", p, k, "interval outside [1, n]"});
        continue;
      }
      if (!frechet_decide(pl.reference, T.subcurve(iv.lo, iv.hi), delta_prime, tol.geom)) {
        std::ostringstream s;
        s.precision(17);
        s << "d_F(reference, T[" << iv.lo << ", " << iv.hi << "]) > " << delta_prime;
        r.failures.push_back({"frechet", p, k, s.str()});
      }
    }
  }
  const auto merged = merge_intervals(all, tol.param);
  const double n = T.last_param();
  if (merged.empty() || merged.front().lo > 1.0 + tol.param || merged.front().hi < n - tol.param) {
    std::ostringstream s;
    s.precision(17);
    if (merged.empty())
      s << "no intervals";
    else
      s << "coverage has " << merged.size() << " pieces, first [" << merged.front().lo << ", "
        << merged.front().hi << "]";
    r.failures.push_back({"coverage", 0, 0, s.str()});
  }
  return r;
}

inline ValidationReport validate_clustering(const PolyCurve& T, const Clustering& c) {
  return validate_clustering(T, c.pathlets, c.ell, c.effective_delta_prime, c.tol);
}

}  // namespace pathlet
