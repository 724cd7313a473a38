#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "pathlet/geometry.hpp"
#include "pathlet/universe.hpp"

namespace pathlet {

/// A non-free piece of a grid edge of the parameter space.
struct ObstacleSegment {
  bool vertical = false;  // true: on the line x = line, spanning y in [lo, hi]
  double line = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;  // endpoint shared with free space
  bool hi_open = false;
};

/// FSD(W, T) reduced to its parameter-space grid: the free part of every grid
/// edge, in global coordinates. Everything else on the grid is obstacle.
///
/// Vertical edges sit on x = c (c = 1..w) and span row r = [r, r + 1]; horizontal
/// edges sit on y = r (r = 1..n) and span column c = [c, c + 1]. A curve with a
/// single vertex yields one degenerate row or column of zero width.
struct RectDomain {
  std::size_t w = 0;
  std::size_t n = 0;
  std::vector<std::optional<ParamInterval>> vert;   // [(c - 1) * rows + (r - 1)]
  std::vector<std::optional<ParamInterval>> horiz;  // [(r - 1) * cols + (c - 1)]

  [[nodiscard]] std::size_t cols() const { return w > 1 ? w - 1 : 1; }
  [[nodiscard]] std::size_t rows() const { return n > 1 ? n - 1 : 1; }
  [[nodiscard]] double col_end(std::size_t c) const {
    return static_cast<double>(std::min(c + 1, w));
  }
  [[nodiscard]] double row_end(std::size_t r) const {
    return static_cast<double>(std::min(r + 1, n));
  }
  [[nodiscard]] const std::optional<ParamInterval>& vertical(std::size_t c, std::size_t r) const {
    return vert[(c - 1) * rows() + (r - 1)];
  }
  [[nodiscard]] const std::optional<ParamInterval>& horizontal(std::size_t r,
                                                               std::size_t c) const {
    return horiz[(r - 1) * cols() + (c - 1)];
  }

  /// The columns [first, first + width - 1] of this domain, re-based to x = 1.
  [[nodiscard]] RectDomain slice(std::size_t first, std::size_t width) const {
    RectDomain d;
    d.w = width;
    d.n = n;
    const double shift = static_cast<double>(first) - 1.0;
    for (std::size_t c = first; c < first + width; ++c)
      for (std::size_t r = 1; r <= rows(); ++r) d.vert.push_back(vertical(c, r));
    for (std::size_t r = 1; r <= n; ++r) {
      for (std::size_t c = first; c < first + d.cols(); ++c) {
        auto iv = width > 1 ? horizontal(r, c) : std::optional<ParamInterval>{};
        if (width == 1) {
          // zero-width column: the grid vertex (first, r) itself
          const double y = static_cast<double>(r);
          for (std::size_t row : {r > 1 ? r - 1 : r, std::min(r, rows())})
            if (const auto& v = vertical(first, row); v && v->contains(y))
              iv = ParamInterval{static_cast<double>(first), static_cast<double>(first)};
        }
        if (iv) iv = ParamInterval{iv->lo - shift, iv->hi - shift};
        d.horiz.push_back(iv);
      }
    }
    return d;
  }

  /// Complements of the free intervals on every grid edge.
  [[nodiscard]] std::vector<ObstacleSegment> obstacles() const {
    std::vector<ObstacleSegment> out;
    auto emit = [&](bool vertical, double line, double a, double b,
                    const std::optional<ParamInterval>& free) {
      if (!free) {
        out.push_back({vertical, line, a, b, false, false});
        return;
      }
      if (free->lo > a) out.push_back({vertical, line, a, free->lo, false, true});
      if (free->hi < b) out.push_back({vertical, line, free->hi, b, true, false});
    };
    for (std::size_t c = 1; c <= w; ++c)
      for (std::size_t r = 1; r <= rows(); ++r)
        emit(true, static_cast<double>(c), static_cast<double>(r), row_end(r), vertical(c, r));
    for (std::size_t r = 1; r <= n; ++r)
      for (std::size_t c = 1; c <= cols(); ++c)
        emit(false, static_cast<double>(r), static_cast<double>(c), col_end(c),
             horizontal(r, c));
    return out;
  }
};

/// Free intervals on all grid edges of FSD(W, T) at the given radius.
inline RectDomain build_rect_domain(const PolyCurve& W, const PolyCurve& T, double radius,
                                    const Tolerance& tol = {}) {
  if (W.empty() || T.empty()) throw InputError("rect domain of an empty curve");
  RectDomain d;
  d.w = W.size();
  d.n = T.size();
  d.vert.reserve(d.w * d.rows());
  for (std::size_t c = 1; c <= d.w; ++c) {
    for (std::size_t r = 1; r <= d.rows(); ++r) {
      const std::size_t r1 = std::min(r + 1, d.n);
      auto iv = free_interval_on_edge(T.vertex(r), T.vertex(r1), W.vertex(c), radius, tol.geom);
      const double len = static_cast<double>(r1 - r);
      if (iv) iv = ParamInterval{static_cast<double>(r) + iv->lo * len,
                                 static_cast<double>(r) + iv->hi * len};
      d.vert.push_back(iv);
    }
  }
  d.horiz.reserve(d.n * d.cols());
  for (std::size_t r = 1; r <= d.n; ++r) {
    for (std::size_t c = 1; c <= d.cols(); ++c) {
      const std::size_t c1 = std::min(c + 1, d.w);
      auto iv = free_interval_on_edge(W.vertex(c), W.vertex(c1), T.vertex(r), radius, tol.geom);
      const double len = static_cast<double>(c1 - c);
      if (iv) iv = ParamInterval{static_cast<double>(c) + iv->lo * len,
                                 static_cast<double>(c) + iv->hi * len};
      d.horiz.push_back(iv);
    }
  }
  return d;
}

/// Directed graph on points of the parameter space. Arcs never decrease x or y.
/// The first `base_count` vertices are shared grid/Z vertices; the rest are
/// Steiner points private to one cell.
struct ReachGraph {
  struct Vertex {
    double x = 0.0;
    double y = 0.0;
  };
  std::vector<Vertex> vertices;
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> z_vertex;  // vertex of each input Z point
  std::size_t base_count = 0;

  [[nodiscard]] std::size_t arc_count() const {
    std::size_t s = 0;
    for (const auto& a : out) s += a.size();
    return s;
  }
};

namespace detail {

inline bool is_integer(double v) { return v == std::floor(v); }

class GraphBuilder {
 public:
  GraphBuilder(const RectDomain& d, const Tolerance& tol) : d_(d), tol_(tol) {}

  std::uint32_t add(double x, double y) {
    const auto key = std::make_pair(x, y);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(g_.vertices.size());
    ids_.emplace(key, id);
    g_.vertices.push_back({x, y});
    return id;
  }

  // Places a point of Z, clamping points on grid lines onto the free part of
  // their grid edge.
  std::uint32_t add_z(const CriticalPoint& z) {
    const double eps = tol_.param;
    const double W = static_cast<double>(d_.w), N = static_cast<double>(d_.n);
    if (z.x < 1.0 - eps || z.x > W + eps || z.y < 1.0 - eps || z.y > N + eps)
      throw InputError("reachability point outside the domain");
    double x = std::clamp(z.x, 1.0, W);
    double y = std::clamp(z.y, 1.0, N);
    if (is_integer(x) && !is_integer(y)) {
      const auto& iv = d_.vertical(static_cast<std::size_t>(x), cell_row(y));
      y = clamp_free(iv, y);
    } else if (is_integer(y) && !is_integer(x)) {
      const auto& iv = d_.horizontal(static_cast<std::size_t>(y), cell_col(x));
      x = clamp_free(iv, x);
    } else if (is_integer(x) && is_integer(y)) {
      if (!corner_free(static_cast<std::size_t>(x), static_cast<std::size_t>(y)))
        throw InputError("reachability point inside an obstacle");
    }
    return add(x, y);
  }

  [[nodiscard]] std::size_t cell_col(double x) const {
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(x)), 1, d_.cols());
  }
  [[nodiscard]] std::size_t cell_row(double y) const {
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(y)), 1, d_.rows());
  }

  void add_ports() {
    for (std::size_t c = 1; c <= d_.w; ++c)
      for (std::size_t r = 1; r <= d_.rows(); ++r)
        if (const auto& iv = d_.vertical(c, r)) {
          add(static_cast<double>(c), iv->lo);
          add(static_cast<double>(c), iv->hi);
        }
    for (std::size_t r = 1; r <= d_.n; ++r)
      for (std::size_t c = 1; c <= d_.cols(); ++c)
        if (const auto& iv = d_.horizontal(r, c)) {
          add(iv->lo, static_cast<double>(r));
          add(iv->hi, static_cast<double>(r));
        }
  }

  // Closes the vertex set under projection: non-integer x's on horizontal
  // lines move up through their column, non-integer y's on vertical lines move
  // right through their row, as long as they stay inside the free interval.
  void add_projections() {
    const std::size_t cols = d_.w > 1 ? d_.w - 1 : 0;
    const std::size_t rows = d_.n > 1 ? d_.n - 1 : 0;
    // seeds[c][r]: x-values entering horizontal line r of column c
    std::vector<std::vector<std::vector<double>>> up(cols, std::vector<std::vector<double>>(d_.n + 2));
    std::vector<std::vector<std::vector<double>>> right(rows, std::vector<std::vector<double>>(d_.w + 2));
    for (const auto& v : g_.vertices) {
      const bool xi = is_integer(v.x), yi = is_integer(v.y);
      if (!xi && cols > 0) {
        const std::size_t c = cell_col(v.x);
        const auto line = static_cast<std::size_t>(std::floor(v.y)) + 1;
        if (line <= d_.n) up[c - 1][line].push_back(v.x);
      }
      if (!yi && rows > 0) {
        const std::size_t r = cell_row(v.y);
        const auto line = static_cast<std::size_t>(std::floor(v.x)) + 1;
        if (line <= d_.w) right[r - 1][line].push_back(v.y);
      }
    }
    for (std::size_t c = 1; c <= cols; ++c) {
      std::vector<double> active;
      for (std::size_t r = 2; r <= d_.n; ++r) {
        auto& seeds = up[c - 1][r];
        active.insert(active.end(), seeds.begin(), seeds.end());
        std::sort(active.begin(), active.end());
        active.erase(std::unique(active.begin(), active.end()), active.end());
        const auto& iv = d_.horizontal(r, c);
        std::vector<double> keep;
        if (iv)
          for (double x : active)
            if (x >= iv->lo && x <= iv->hi) {
              add(x, static_cast<double>(r));
              keep.push_back(x);
            }
        active = std::move(keep);
      }
    }
    for (std::size_t r = 1; r <= rows; ++r) {
      std::vector<double> active;
      for (std::size_t c = 2; c <= d_.w; ++c) {
        auto& seeds = right[r - 1][c];
        active.insert(active.end(), seeds.begin(), seeds.end());
        std::sort(active.begin(), active.end());
        active.erase(std::unique(active.begin(), active.end()), active.end());
        const auto& iv = d_.vertical(c, r);
        std::vector<double> keep;
        if (iv)
          for (double y : active)
            if (y >= iv->lo && y <= iv->hi) {
              add(static_cast<double>(c), y);
              keep.push_back(y);
            }
        active = std::move(keep);
      }
    }
  }

  // Vertices of each cell: those on its closed boundary or strictly inside.
  [[nodiscard]] std::vector<std::vector<std::uint32_t>> cell_members() const {
    const std::size_t cols = d_.cols(), rows = d_.rows();
    std::vector<std::vector<std::uint32_t>> cells(cols * rows);
    auto range = [](double v, std::size_t count) {
      std::pair<std::size_t, std::size_t> r;
      if (is_integer(v)) {
        const auto k = static_cast<std::size_t>(v);
        r = {std::max<std::size_t>(k > 1 ? k - 1 : 1, 1), std::min(k, count)};
      } else {
        const auto k = static_cast<std::size_t>(std::floor(v));
        r = {k, k};
      }
      return r;
    };
    for (std::uint32_t id = 0; id < g_.vertices.size(); ++id) {
      const auto& v = g_.vertices[id];
      const auto [c0, c1] = range(v.x, cols);
      const auto [r0, r1] = range(v.y, rows);
      for (std::size_t c = c0; c <= c1; ++c)
        for (std::size_t r = r0; r <= r1; ++r) cells[(c - 1) * rows + (r - 1)].push_back(id);
    }
    return cells;
  }

  ReachGraph& graph() { return g_; }

 private:
  [[nodiscard]] double clamp_free(const std::optional<ParamInterval>& iv, double v) const {
    if (!iv || v < iv->lo - tol_.param || v > iv->hi + tol_.param)
      throw InputError("reachability point inside an obstacle");
    return std::clamp(v, iv->lo, iv->hi);
  }

  [[nodiscard]] bool corner_free(std::size_t x, std::size_t y) const {
    const double dy = static_cast<double>(y);
    const double dx = static_cast<double>(x);
    auto near = [&](const std::optional<ParamInterval>& iv, double v) {
      return iv && iv->lo - tol_.param <= v && v <= iv->hi + tol_.param;
    };
    for (std::size_t r : {y > 1 ? y - 1 : y, std::min(y, d_.rows())})
      if (near(d_.vertical(x, r), dy)) return true;
    for (std::size_t c : {x > 1 ? x - 1 : x, std::min(x, d_.cols())})
      if (near(d_.horizontal(y, c), dx)) return true;
    return false;
  }

  const RectDomain& d_;
  Tolerance tol_;
  ReachGraph g_;
  std::map<std::pair<double, double>, std::uint32_t> ids_;
};

inline bool dominated(const ReachGraph::Vertex& a, const ReachGraph::Vertex& b) {
  return a.x <= b.x && a.y <= b.y;
}

inline bool lex_less(const ReachGraph::Vertex& a, const ReachGraph::Vertex& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Divide and conquer over one cell's vertices sorted by (x, y): a vertical cut
// at the last x of the left half carries one Steiner point per y-value, wired
// left half -> cut -> up the cut -> right half.
inline void dominance_dc(ReachGraph& g, std::vector<std::uint32_t>& pts, std::size_t a,
                         std::size_t b) {
  const std::size_t count = b - a;
  if (count < 2) return;
  if (count <= 3) {
    for (std::size_t s = a; s < b; ++s)
      for (std::size_t t = s + 1; t < b; ++t)
        if (dominated(g.vertices[pts[s]], g.vertices[pts[t]])) g.out[pts[s]].push_back(pts[t]);
    return;
  }
  const std::size_t mid = a + count / 2;
  const double cut = g.vertices[pts[mid - 1]].x;
  std::vector<double> ys;
  ys.reserve(count);
  for (std::size_t s = a; s < b; ++s) ys.push_back(g.vertices[pts[s]].y);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const auto first = static_cast<std::uint32_t>(g.vertices.size());
  for (double y : ys) {
    g.vertices.push_back({cut, y});
    g.out.emplace_back();
  }
  for (std::size_t k = 0; k + 1 < ys.size(); ++k)
    g.out[first + k].push_back(first + static_cast<std::uint32_t>(k) + 1);
  auto steiner = [&](double y) {
    return first + static_cast<std::uint32_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
  };
  for (std::size_t s = a; s < mid; ++s) g.out[pts[s]].push_back(steiner(g.vertices[pts[s]].y));
  for (std::size_t s = mid; s < b; ++s) g.out[steiner(g.vertices[pts[s]].y)].push_back(pts[s]);
  dominance_dc(g, pts, a, mid);
  dominance_dc(g, pts, mid, b);
}

inline ReachGraph build_reach_graph_impl(const RectDomain& domain,
                                         const std::vector<CriticalPoint>& Z,
                                         const Tolerance& tol, bool naive) {
  GraphBuilder b(domain, tol);
  b.add_ports();
  std::vector<std::uint32_t> zv;
  zv.reserve(Z.size());
  for (const auto& z : Z) zv.push_back(b.add_z(z));
  b.add_projections();
  const auto cells = b.cell_members();
  ReachGraph& g = b.graph();
  g.base_count = g.vertices.size();
  g.out.assign(g.vertices.size(), {});
  g.z_vertex = std::move(zv);
  for (auto members : cells) {
    std::sort(members.begin(), members.end(), [&](std::uint32_t p, std::uint32_t q) {
      return lex_less(g.vertices[p], g.vertices[q]);
    });
    if (naive) {
      for (std::size_t s = 0; s < members.size(); ++s)
        for (std::size_t t = s + 1; t < members.size(); ++t)
          if (dominated(g.vertices[members[s]], g.vertices[members[t]]))
            g.out[members[s]].push_back(members[t]);
    } else {
      dominance_dc(g, members, 0, members.size());
    }
  }
  for (auto& arcs : g.out) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }
  return std::move(g);
}

}  // namespace detail

/// Reachability graph on Z: a directed path from z to z' exists iff a
/// bimonotone path inside the free space joins them. Each cell is wired by a
/// divide-and-conquer dominance gadget with private Steiner points.
inline ReachGraph build_reach_graph(const RectDomain& domain, const std::vector<CriticalPoint>& Z,
                                    const Tolerance& tol = {}) {
  return detail::build_reach_graph_impl(domain, Z, tol, false);
}

/// Same vertex set, with an arc between every dominating pair inside a cell.
inline ReachGraph reach_graph_naive(const RectDomain& domain, const std::vector<CriticalPoint>& Z,
                                    const Tolerance& tol = {}) {
  return detail::build_reach_graph_impl(domain, Z, tol, true);
}

/// Vertices in yx-lexicographic topological order.
inline std::vector<std::uint32_t> sweep_order(const ReachGraph& g) {
  const std::size_t V = g.vertices.size();
  std::vector<std::uint32_t> indeg(V, 0);
  for (const auto& arcs : g.out)
    for (auto t : arcs) ++indeg[t];
  using Key = std::tuple<double, double, std::uint32_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (std::uint32_t v = 0; v < V; ++v)
    if (indeg[v] == 0) ready.emplace(g.vertices[v].y, g.vertices[v].x, v);
  std::vector<std::uint32_t> order;
  order.reserve(V);
  while (!ready.empty()) {
    const auto v = std::get<2>(ready.top());
    ready.pop();
    order.push_back(v);
    for (auto t : g.out[v])
      if (--indeg[t] == 0) ready.emplace(g.vertices[t].y, g.vertices[t].x, t);
  }
  if (order.size() != V) throw std::logic_error("reachability graph has a cycle");
  return order;
}

/// For every vertex, the minimum y over the given start vertices that reach
/// it (+inf if none does). `start_values`, when given, replaces the start
/// vertices' own y (e.g. the unclamped y of the original point).
inline std::vector<double> annotate_min_start(const ReachGraph& g,
                                              const std::vector<std::uint32_t>& starts,
                                              const std::vector<double>& start_values = {}) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> ann(g.vertices.size(), inf);
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const double y = start_values.empty() ? g.vertices[starts[k]].y : start_values[k];
    ann[starts[k]] = std::min(ann[starts[k]], y);
  }
  for (auto v : sweep_order(g)) {
    if (ann[v] == inf) continue;
    for (auto t : g.out[v]) ann[t] = std::min(ann[t], ann[v]);
  }
  return ann;
}

/// reach[a][b]: Z point b is reachable from Z point a.
inline std::vector<std::vector<bool>> reachability_matrix(const ReachGraph& g) {
  const std::size_t k = g.z_vertex.size();
  std::vector<std::vector<bool>> m(k, std::vector<bool>(k, false));
  std::vector<int> seen(g.vertices.size(), -1);
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<std::uint32_t> stack{g.z_vertex[a]};
    seen[g.z_vertex[a]] = static_cast<int>(a);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto t : g.out[v])
        if (seen[t] != static_cast<int>(a)) {
          seen[t] = static_cast<int>(a);
          stack.push_back(t);
        }
    }
    for (std::size_t b = 0; b < k; ++b) m[a][b] = seen[g.z_vertex[b]] == static_cast<int>(a);
  }
  return m;
}

}  // namespace pathlet
