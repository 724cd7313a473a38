#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pathlet/geometry.hpp"
#include "pathlet/universe.hpp"

namespace pathlet {

/// Number of intervals stored as consecutive endpoint pairs in the sorted
/// multiset `endpoints` that lie inside `query` (with slack s on both ends).
///
/// The stored intervals must be interior-disjoint and sorted, so that the
/// endpoint list alternates lo, hi, lo, hi. k endpoints fall in the query; up
/// to two of them belong to intervals that stick out on either side.
inline std::size_t count_contained(const std::vector<double>& endpoints, ParamInterval query,
                                   double s = 0.0) {
  if (query.hi < query.lo) return 0;
  const auto lo = std::lower_bound(endpoints.begin(), endpoints.end(), query.lo - s);
  const auto hi = std::upper_bound(endpoints.begin(), endpoints.end(), query.hi + s);
  if (hi <= lo) return 0;
  const auto idx_lo = static_cast<std::size_t>(lo - endpoints.begin());
  const auto idx_hi = static_cast<std::size_t>(hi - endpoints.begin());
  std::size_t k = idx_hi - idx_lo;
  std::size_t kp = 0;
  if (idx_lo % 2 == 1) ++kp;                    // first endpoint is a hi whose lo is outside
  if (idx_hi % 2 == 1 && idx_hi - 1 >= idx_lo) ++kp;  // last endpoint is a lo whose hi is outside
  if (kp > k) return 0;
  return (k - kp) / 2;
}

/// Sorted union of intervals; pieces whose gap is at most s are joined.
inline std::vector<ParamInterval> merge_intervals(std::vector<ParamInterval> ivs, double s = 0.0) {
  std::sort(ivs.begin(), ivs.end(), [](const ParamInterval& a, const ParamInterval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<ParamInterval> out;
  for (const auto& iv : ivs) {
    if (!out.empty() && iv.lo <= out.back().hi + s)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  return out;
}

/// Residual-coverage queries over a universe and the covered subset Cov(C).
///
/// Universe endpoints are kept as a sorted list; covered intervals are tracked
/// with a Fenwick tree over per-interval flags, which answers "how many covered
/// intervals lie in index range [a, b)" in O(log M).
class CoverageIndex {
 public:
  CoverageIndex() = default;

  explicit CoverageIndex(const Universe& u, double eps_param = 1e-7)
      : slack_(0.5 * eps_param), flags_(u.size(), 0), tree_(u.size() + 1, 0) {
    endpoints_.reserve(2 * u.size());
    for (std::size_t t = 0; t < u.size(); ++t) {
      const auto iv = u.interval(t);
      endpoints_.push_back(iv.lo);
      endpoints_.push_back(iv.hi);
      los_.push_back(iv.lo);
      his_.push_back(iv.hi);
    }
  }

  [[nodiscard]] std::size_t universe_size() const { return flags_.size(); }
  [[nodiscard]] std::size_t covered_count() const { return covered_; }
  [[nodiscard]] std::size_t uncovered_count() const { return flags_.size() - covered_; }
  [[nodiscard]] bool is_covered(std::size_t t) const { return flags_[t] != 0; }
  [[nodiscard]] double slack() const { return slack_; }
  [[nodiscard]] const std::vector<double>& endpoints() const { return endpoints_; }

  /// Index range [first, last) of universe intervals contained in q.
  [[nodiscard]] std::pair<std::size_t, std::size_t> contained_range(ParamInterval q) const {
    const auto first = static_cast<std::size_t>(
        std::lower_bound(los_.begin(), los_.end(), q.lo - slack_) - los_.begin());
    const auto last = static_cast<std::size_t>(
        std::upper_bound(his_.begin(), his_.end(), q.hi + slack_) - his_.begin());
    return {first, std::max(first, last)};
  }

  /// Universe intervals inside the union of `intervals` that are not yet covered.
  [[nodiscard]] std::size_t residual_coverage(const std::vector<ParamInterval>& intervals) const {
    std::size_t total = 0;
    for (const auto& q : merge_intervals(intervals, slack_)) {
      const std::size_t all = count_contained(endpoints_, q, slack_);
      if (all == 0) continue;
      const auto [first, last] = contained_range(q);
      total += all - (prefix(last) - prefix(first));
    }
    return total;
  }

  /// Marks every universe interval inside the union of `intervals` as covered.
  /// Returns the number of newly covered intervals.
  std::size_t commit(const std::vector<ParamInterval>& intervals) {
    std::size_t added = 0;
    for (const auto& q : merge_intervals(intervals, slack_)) {
      const auto [first, last] = contained_range(q);
      for (std::size_t t = first; t < last; ++t) {
        if (flags_[t]) continue;
        flags_[t] = 1;
        add(t);
        ++added;
      }
    }
    covered_ += added;
    return added;
  }

  /// Uncovered universe intervals, in order.
  [[nodiscard]] std::vector<ParamInterval> uncovered() const {
    std::vector<ParamInterval> out;
    for (std::size_t t = 0; t < flags_.size(); ++t)
      if (!flags_[t]) out.push_back({los_[t], his_[t]});
    return out;
  }

 private:
  void add(std::size_t t) {
    for (std::size_t k = t + 1; k < tree_.size(); k += k & (~k + 1)) ++tree_[k];
  }
  // covered intervals among indices [0, t)
  [[nodiscard]] std::size_t prefix(std::size_t t) const {
    std::size_t s = 0;
    for (std::size_t k = t; k > 0; k -= k & (~k + 1)) s += tree_[k];
    return s;
  }

  double slack_ = 0.0;
  std::vector<double> endpoints_;
  std::vector<double> los_;
  std::vector<double> his_;
  std::vector<std::uint8_t> flags_;
  std::vector<std::size_t> tree_;
  std::size_t covered_ = 0;
};

}  // namespace pathlet
