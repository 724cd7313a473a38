#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pathlet/clustering.hpp"
#include "pathlet/geometry.hpp"
#include "pathlet/simplification.hpp"
#include "pathlet/types.hpp"
#include "pathlet/universe.hpp"

namespace pathlet::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto k = line.find(',', start);
    out.push_back(line.substr(start, k == std::string_view::npos ? k : k - start));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return out;
}

}  // namespace detail

/// Reads a trajectory: one vertex per line, comma-separated coordinates.
/// Blank lines and lines starting with '#' are skipped; the first remaining
/// line may be a header. Errors name the offending line.
inline PolyCurve read_csv(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  bool first = true;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = detail::split(t);
    std::vector<double> row;
    bool ok = true;
    for (const auto f : fields) {
      double v = 0.0;
      if (!detail::parse_double(f, v)) {
        ok = false;
        break;
      }
      row.push_back(v);
    }
    if (!ok) {
      if (first) {  // header
        first = false;
        continue;
      }
      throw InputError("line " + std::to_string(lineno) + ": malformed row \"" + std::string(t) +
                       "\"");
    }
    first = false;
    for (double v : row)
      if (!std::isfinite(v))
        throw InputError("line " + std::to_string(lineno) + ": non-finite coordinate");
    if (dim == 0) dim = row.size();
    if (row.size() != dim)
      throw InputError("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                       " columns, found " + std::to_string(row.size()));
    coords.insert(coords.end(), row.begin(), row.end());
  }
  if (dim == 0) throw InputError("no vertices in input");
  return PolyCurve(dim, std::move(coords));
}

inline PolyCurve read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  return read_csv(f);
}

inline json to_json(PointView p) { return json(std::vector<double>(p.begin(), p.end())); }

inline json to_json(const PolyCurve& c) {
  json a = json::array();
  for (std::size_t k = 1; k <= c.size(); ++k) a.push_back(to_json(c.vertex(k)));
  return a;
}

inline json to_json(const std::vector<ParamInterval>& ivs) {
  json a = json::array();
  for (const auto& iv : ivs) a.push_back({iv.lo, iv.hi});
  return a;
}

inline const char* kind_name(PathletKind k) {
  switch (k) {
    case PathletKind::kVertex:
      return "vertex";
    case PathletKind::kSubedge:
      return "subedge";
    case PathletKind::kWhole:
      return "whole";
  }
  return "?";
}

inline json simplification_json(const Simplification& s) {
  return {{"breakpoints", s.breakpoints}, {"vertices", to_json(s.curve)}};
}

inline json pathlet_json(const Pathlet& p) {
  return {{"kind", kind_name(p.kind)},
          {"reference",
           {{"curve", p.kind == PathletKind::kWhole ? "T" : "S"},
            {"from", p.from},
            {"to", p.to},
            {"vertices", to_json(p.reference)}}},
          {"intervals", to_json(p.intervals)},
          {"residual_score", p.score}};
}

inline json params_json(const Clustering& c) {
  return {{"n", c.n},
          {"ell", c.ell},
          {"delta", c.delta},
          {"delta_prime", c.delta_prime},
          {"effective_delta_prime", c.effective_delta_prime},
          {"eps_geom", c.tol.geom},
          {"eps_param", c.tol.param}};
}

/// Clustering document. `pathlets` may differ from c.pathlets (post-processing).
inline json clustering_json(const Clustering& c, const std::vector<Pathlet>& pathlets) {
  json ps = json::array();
  for (const auto& p : pathlets) ps.push_back(pathlet_json(p));
  return {{"schema_version", kSchemaVersion},
          {"params", params_json(c)},
          {"simplification", simplification_json(c.simplification)},
          {"pathlets", std::move(ps)},
          {"stats",
           {{"iterations", c.covered_per_iteration.size()},
            {"universe_size", c.universe_size},
            {"covered_per_iteration", c.covered_per_iteration},
            {"residual_per_iteration", c.residual_per_iteration},
            {"delta_prime_inflated", c.inflated}}}};
}

inline json clustering_json(const Clustering& c) { return clustering_json(c, c.pathlets); }

/// Parses the pathlets back out of a clustering document.
inline std::vector<Pathlet> pathlets_from_json(const json& doc) {
  std::vector<Pathlet> out;
  for (const auto& pj : doc.at("pathlets")) {
    Pathlet p;
    const std::string kind = pj.at("kind");
    p.kind = kind == "vertex" ? PathletKind::kVertex
             : kind == "subedge" ? PathletKind::kSubedge
                                 : PathletKind::kWhole;
    const auto& r = pj.at("reference");
    p.from = r.at("from");
    p.to = r.at("to");
    p.reference = PolyCurve::from_points(r.at("vertices").get<std::vector<Point>>());
    for (const auto& iv : pj.at("intervals")) p.intervals.push_back({iv.at(0), iv.at(1)});
    p.score = pj.at("residual_score");
    out.push_back(std::move(p));
  }
  return out;
}

inline void write_json(const std::string& path, const json& doc) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

inline const char* palette(std::size_t k) {
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return colors[k % 10];
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

/// Maps the first two coordinates of a set of curves into a square canvas.
struct Canvas {
  double minx = 0, miny = 0, scale = 1, size = 800, pad = 20;

  explicit Canvas(const std::vector<const PolyCurve*>& curves, double px = 800) : size(px) {
    double maxx = -1e300, maxy = -1e300;
    minx = miny = 1e300;
    for (const auto* c : curves)
      for (std::size_t k = 1; k <= c->size(); ++k) {
        const auto v = c->vertex(k);
        const double y = v.size() > 1 ? v[1] : 0.0;
        minx = std::min(minx, v[0]);
        maxx = std::max(maxx, v[0]);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
      }
    const double span = std::max({maxx - minx, maxy - miny, 1e-12});
    scale = (size - 2 * pad) / span;
  }
  [[nodiscard]] std::string point(PointView v) const {
    const double y = v.size() > 1 ? v[1] : 0.0;
    return fmt(pad + (v[0] - minx) * scale) + "," + fmt(size - pad - (y - miny) * scale);
  }
  [[nodiscard]] std::string polyline(const PolyCurve& c, const char* color, double width,
                                     double opacity = 1.0) const {
    std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                    "\" stroke-width=\"" + fmt(width) + "\" stroke-opacity=\"" + fmt(opacity) +
                    "\" points=\"";
    for (std::size_t k = 1; k <= c.size(); ++k) s += point(c.vertex(k)) + " ";
    return s + "\"/>\n";
  }
};

inline std::string svg_open(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
         "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n<rect width=\"100%\" height=\"100%\" "
         "fill=\"white\"/>\n";
}

}  // namespace detail

/// T in light gray with S on top (first two coordinates).
inline std::string simplification_svg(const PolyCurve& T, const Simplification& s) {
  detail::Canvas cv({&T, &s.curve});
  std::string out = detail::svg_open(cv.size, cv.size);
  out += cv.polyline(T, "#999999", 1.0);
  out += cv.polyline(s.curve, "#d62728", 2.0);
  for (std::size_t k = 1; k <= s.curve.size(); ++k) {
    const auto xy = cv.point(s.curve.vertex(k));
    const auto comma = xy.find(',');
    out += "<circle cx=\"" + xy.substr(0, comma) + "\" cy=\"" + xy.substr(comma + 1) +
           "\" r=\"3\" fill=\"#d62728\"/>\n";
  }
  return out + "</svg>\n";
}

/// T's pieces colored by the pathlet that covers them, references drawn bold.
inline std::string clustering_svg(const PolyCurve& T, const std::vector<Pathlet>& pathlets) {
  std::vector<const PolyCurve*> curves{&T};
  for (const auto& p : pathlets) curves.push_back(&p.reference);
  detail::Canvas cv(curves);
  std::string out = detail::svg_open(cv.size, cv.size);
  out += cv.polyline(T, "#cccccc", 1.0);
  for (std::size_t k = 0; k < pathlets.size(); ++k) {
    const char* color = detail::palette(k);
    out += "<g id=\"pathlet" + std::to_string(k) + "\">\n";
    for (const auto& iv : pathlets[k].intervals)
      out += cv.polyline(T.subcurve(iv.lo, iv.hi), color, 1.5, 0.6);
    out += cv.polyline(pathlets[k].reference, color, 3.5);
    out += "</g>\n";
  }
  return out + "</svg>\n";
}

/// FSD(W, T) at radius r in parameter space (x right, y up): obstacles gray,
/// free space white, critical points as dots, matchings as straight strokes
/// from (x_from, y) to (x_to, y').
struct FsdOverlay {
  double x_from = 1.0, x_to = 1.0;
  std::vector<ParamInterval> intervals;
};

inline std::string fsd_svg(const PolyCurve& W, const PolyCurve& T, double radius,
                           const std::vector<CriticalPoint>& points,
                           const std::vector<FsdOverlay>& overlays = {},
                           const Tolerance& tol = {}) {
  const double cols = std::max(1.0, W.last_param() - 1.0);
  const double rows = std::max(1.0, T.last_param() - 1.0);
  const double unit = std::clamp(800.0 / std::max(cols, rows), 2.0, 120.0);
  const double pad = 10.0;
  const double width = cols * unit + 2 * pad, height = rows * unit + 2 * pad;
  auto X = [&](double x) { return pad + (x - 1.0) * unit; };
  auto Y = [&](double y) { return height - pad - (y - 1.0) * unit; };
  std::string out = detail::svg_open(width, height);
  out += "<rect x=\"" + detail::fmt(pad) + "\" y=\"" + detail::fmt(pad) + "\" width=\"" +
         detail::fmt(cols * unit) + "\" height=\"" + detail::fmt(rows * unit) +
         "\" fill=\"#bbbbbb\"/>\n";
  // free space as thin vertical strips
  const int samples = std::max(2, static_cast<int>(unit / 2.0));
  const double strip = 1.0 / samples;
  for (double c = 1.0; c < W.last_param() || (W.size() == 1 && c == 1.0); c += 1.0) {
    for (int k = 0; k < samples; ++k) {
      const double x = std::min(W.last_param(), c + (k + 0.5) * strip);
      for (const auto& iv : free_components_on_line(W, T, x, radius, tol))
        out += "<rect x=\"" + detail::fmt(X(c + k * strip)) + "\" y=\"" + detail::fmt(Y(iv.hi)) +
               "\" width=\"" + detail::fmt(strip * unit + 0.5) + "\" height=\"" +
               detail::fmt(std::max(0.5, (iv.hi - iv.lo) * unit)) + "\" fill=\"white\"/>\n";
    }
    if (W.size() == 1) break;
  }
  for (double c = 1.0; c <= W.last_param(); c += 1.0)
    out += "<line x1=\"" + detail::fmt(X(c)) + "\" y1=\"" + detail::fmt(Y(1.0)) + "\" x2=\"" +
           detail::fmt(X(c)) + "\" y2=\"" + detail::fmt(Y(T.last_param())) +
           "\" stroke=\"#666666\" stroke-width=\"0.5\"/>\n";
  for (double r = 1.0; r <= T.last_param(); r += 1.0)
    out += "<line x1=\"" + detail::fmt(X(1.0)) + "\" y1=\"" + detail::fmt(Y(r)) + "\" x2=\"" +
           detail::fmt(X(W.last_param())) + "\" y2=\"" + detail::fmt(Y(r)) +
           "\" stroke=\"#666666\" stroke-width=\"0.5\"/>\n";
  for (std::size_t k = 0; k < overlays.size(); ++k)
    for (const auto& iv : overlays[k].intervals)
      out += "<line x1=\"" + detail::fmt(X(overlays[k].x_from)) + "\" y1=\"" +
             detail::fmt(Y(iv.lo)) + "\" x2=\"" + detail::fmt(X(overlays[k].x_to)) + "\" y2=\"" +
             detail::fmt(Y(iv.hi)) + "\" stroke=\"" + detail::palette(k) +
             "\" stroke-width=\"2\"/>\n";
  out += "<g id=\"critical-points\">\n";
  for (const auto& p : points)
    out += "<circle cx=\"" + detail::fmt(X(p.x)) + "\" cy=\"" + detail::fmt(Y(p.y)) +
           "\" r=\"2\" fill=\"#d62728\"/>\n";
  out += "</g>\n";
  return out + "</svg>\n";
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace pathlet::io
