#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "pathlet/coverage_index.hpp"
#include "pathlet/geometry.hpp"
#include "pathlet/parallel.hpp"
#include "pathlet/types.hpp"

namespace pathlet {

/// Largest number of intervals sharing a common point (closed intervals).
inline std::size_t ply(const std::vector<ParamInterval>& ivs) {
  std::vector<std::pair<double, int>> ev;
  for (const auto& iv : ivs) {
    ev.emplace_back(iv.lo, 0);  // opens sort before closes at the same coordinate
    ev.emplace_back(iv.hi, 1);
  }
  std::sort(ev.begin(), ev.end());
  std::size_t cur = 0, best = 0;
  for (const auto& [x, kind] : ev) {
    if (kind == 0)
      best = std::max(best, ++cur);
    else
      --cur;
  }
  return best;
}

/// True if no two intervals share an interior point; touching is allowed.
inline bool interior_disjoint(std::vector<ParamInterval> ivs) {
  std::sort(ivs.begin(), ivs.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
  for (std::size_t k = 1; k < ivs.size(); ++k)
    if (ivs[k].lo < ivs[k - 1].hi && ivs[k].length() > 0 && ivs[k - 1].length() > 0) return false;
  return true;
}

/// Subset of `ivs` with the same union and ply at most two.
inline std::vector<ParamInterval> reduce_ply(std::vector<ParamInterval> ivs) {
  std::sort(ivs.begin(), ivs.end(), [](const ParamInterval& a, const ParamInterval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi > b.hi);
  });
  std::vector<ParamInterval> kept;
  for (const auto& iv : ivs) {
    if (!kept.empty() && iv.hi <= kept.back().hi) continue;  // contained in an earlier one
    // I_k is redundant once I_{k-1} reaches the new interval
    while (kept.size() >= 2 && kept[kept.size() - 2].hi >= iv.lo) kept.pop_back();
    kept.push_back(iv);
  }
  return kept;
}

/// Splits p into two pathlets with the same reference whose interval sets are
/// each pairwise interior-disjoint and together have p's union.
inline std::pair<Pathlet, Pathlet> split_interior_disjoint(const Pathlet& p) {
  Pathlet a = p, b = p;
  a.intervals.clear();
  b.intervals.clear();
  for (const auto& iv : reduce_ply(p.intervals)) {
    if (a.intervals.empty() || iv.lo >= a.intervals.back().hi)
      a.intervals.push_back(iv);
    else
      b.intervals.push_back(iv);
  }
  return {std::move(a), std::move(b)};
}

/// Replaces every pathlet by its interior-disjoint halves, dropping empty ones.
/// Order is kept: the first half of pathlet k precedes its second half.
inline std::vector<Pathlet> make_interior_disjoint(const std::vector<Pathlet>& pathlets) {
  std::vector<std::pair<Pathlet, Pathlet>> halves(pathlets.size());
  parallel_for(pathlets.size(),
               [&](std::size_t k) { halves[k] = split_interior_disjoint(pathlets[k]); });
  std::vector<Pathlet> out;
  for (auto& [a, b] : halves) {
    if (!a.intervals.empty()) out.push_back(std::move(a));
    if (!b.intervals.empty()) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace pathlet
