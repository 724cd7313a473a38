// Command-line front end: cluster, simplify, inspect-fsd, oracle.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

#include "pathlet/clustering.hpp"
#include "pathlet/io.hpp"
#include "pathlet/postprocess.hpp"
#include "pathlet/reachability.hpp"
#include "pathlet/simplification.hpp"
#include "pathlet/testing/oracles.hpp"
#include "pathlet/universe.hpp"

namespace fs = std::filesystem;
using namespace pathlet;
using io::json;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitStall = 2;

struct Common {
  std::string input;
  std::string out = ".";
  double delta = 0.0;
  double eps_geom = 1e-9;  // relative to the bounding-box diameter
  double eps_param = 1e-7;
  bool svg = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("--input", c.input, "trajectory CSV, one vertex per line")->required();
  cmd->add_option("--delta", c.delta, "distance threshold")->required()->check(
      CLI::NonNegativeNumber);
  if (with_out) {
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_flag("--svg", c.svg, "also write SVG renderings");
  }
  cmd->add_option("--eps-geom", c.eps_geom, "geometric slack, relative to the curve diameter")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--eps-param", c.eps_param, "parameter-space slack")
      ->check(CLI::NonNegativeNumber);
}

std::string out_path(const Common& c, const std::string& name) {
  fs::create_directories(c.out);
  return (fs::path(c.out) / name).string();
}

json validation_json(const ValidationReport& r) {
  json f = json::array();
  for (const auto& x : r.failures)
    f.push_back({{"check", x.check}, {"pathlet", x.pathlet}, {"interval", x.interval},
                 {"detail", x.detail}});
  return {{"ok", r.ok()}, {"intervals_checked", r.intervals_checked}, {"failures", f}};
}

int cmd_cluster(const Common& c, std::size_t ell, bool interior_disjoint) {
  const auto T = io::read_csv_file(c.input);
  ClusterOptions opt;
  opt.rel_geom = c.eps_geom;
  opt.eps_param = c.eps_param;
  try {
    const auto cl = cluster(T, ell, c.delta, opt);
    auto pathlets = interior_disjoint ? make_interior_disjoint(cl.pathlets) : cl.pathlets;
    json doc = io::clustering_json(cl, pathlets);
    doc["params"]["interior_disjoint"] = interior_disjoint;
    doc["validation"] =
        validation_json(validate_clustering(T, pathlets, cl.ell, cl.effective_delta_prime, cl.tol));
    const auto path = out_path(c, "clustering.json");
    io::write_json(path, doc);
    if (c.svg) io::write_text(out_path(c, "clustering.svg"), io::clustering_svg(T, pathlets));
    std::cout << "wrote " << path << " (" << pathlets.size() << " pathlets, universe "
              << cl.universe_size << ")\n";
    return 0;
  } catch (const StallError& e) {
    json doc = io::clustering_json(e.partial);
    doc["error"] = "stall";
    doc["message"] = e.what();
    doc["uncovered"] = io::to_json(e.uncovered);
    io::write_json(out_path(c, "clustering.json"), doc);
    std::cerr << "error: " << e.what() << '\n';
    return kExitStall;
  }
}

int cmd_simplify(const Common& c) {
  const auto T = io::read_csv_file(c.input);
  const auto tol = Tolerance::scaled(T.bbox_diameter(), c.eps_geom, c.eps_param);
  const auto s = build_simplification(T, c.delta, tol);
  json doc = io::simplification_json(s);
  doc["schema_version"] = io::kSchemaVersion;
  doc["params"] = {{"n", T.size()}, {"delta", c.delta}, {"eps_geom", tol.geom},
                   {"eps_param", tol.param}};
  doc["verified"] = verify_simplification(T, s, c.delta, tol);
  const auto path = out_path(c, "simplification.json");
  io::write_json(path, doc);
  if (c.svg) io::write_text(out_path(c, "simplification.svg"), io::simplification_svg(T, s));
  std::cout << "wrote " << path << " (" << s.curve.size() << " of " << T.size()
            << " vertices)\n";
  return 0;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text, std::size_t size) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("column range must look like i:j");
  std::size_t i = 0, j = 0;
  try {
    i = std::stoul(text.substr(0, colon));
    j = std::stoul(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw InputError("column range must look like i:j");
  }
  if (i < 1 || j < i || j > size)
    throw InputError("column range " + text + " outside [1, " + std::to_string(size) + "]");
  return {i, j};
}

int cmd_inspect_fsd(const Common& c, const std::string& range, const std::string& clustering,
                    bool graph) {
  const auto T = io::read_csv_file(c.input);
  const auto tol = Tolerance::scaled(T.bbox_diameter(), c.eps_geom, c.eps_param);
  const auto S = build_simplification(T, c.delta, tol).curve;
  const auto [i, j] = range.empty() ? std::pair<std::size_t, std::size_t>{1, S.size()}
                                    : parse_range(range, S.size());
  const auto W = S.subcurve(static_cast<double>(i), static_cast<double>(j));
  const double dp = 4.0 * c.delta;
  const auto ub = build_universe(W, T, dp, tol, true);

  json doc;
  doc["schema_version"] = io::kSchemaVersion;
  doc["params"] = {{"delta_prime", dp}, {"first_vertex", i}, {"last_vertex", j},
                   {"n", T.size()}};
  json pts = json::array();
  for (const auto& p : ub.points) pts.push_back({p.x, p.y});
  doc["critical_points"] = pts;
  doc["universe_size"] = ub.universe.size();

  std::vector<io::FsdOverlay> overlays;
  if (!clustering.empty()) {
    std::ifstream f(clustering);
    if (!f) throw InputError("cannot open " + clustering);
    json cj;
    try {
      cj = json::parse(f);
    } catch (const json::exception& e) {
      throw InputError(clustering + ": " + e.what());
    }
    const double lo = static_cast<double>(i), hi = static_cast<double>(j);
    for (const auto& p : io::pathlets_from_json(cj))
      if (p.kind != PathletKind::kWhole && p.from <= p.to && lo <= p.from && p.to <= hi)
        overlays.push_back({p.from - lo + 1.0, p.to - lo + 1.0, p.intervals});
  }
  if (graph) {
    std::vector<CriticalPoint> Z = ub.points;
    const auto g = build_reach_graph(build_rect_domain(W, T, dp, tol), Z, tol);
    json vs = json::array(), arcs = json::array();
    for (const auto& v : g.vertices) vs.push_back({v.x, v.y});
    for (std::size_t u = 0; u < g.out.size(); ++u)
      for (auto v : g.out[u]) arcs.push_back({u, v});
    doc["graph"] = {{"vertices", vs}, {"arcs", arcs}, {"z_vertex", g.z_vertex}};
  }
  const auto path = out_path(c, "fsd.json");
  io::write_json(path, doc);
  io::write_text(out_path(c, "fsd.svg"), io::fsd_svg(W, T, dp, ub.points, overlays, tol));
  std::cout << "wrote " << path << " (" << ub.points.size() << " critical points)\n";
  return 0;
}

int cmd_oracle(const std::string& what, const Common& c, std::size_t ell,
               const std::string& other) {
  namespace oracle = pathlet::testing;
  const auto T = io::read_csv_file(c.input);
  json doc;
  if (what == "min-simplification") {
    if (T.size() > 24) throw InputError("min-simplification oracle needs n <= 24");
    doc = {{"min_vertices", oracle::oracle_min_simplification(T, c.delta)},
           {"simplification_vertices", build_simplification(T, c.delta).curve.size()}};
  } else if (what == "frechet") {
    if (other.empty()) throw InputError("frechet oracle needs --other");
    const auto Q = io::read_csv_file(other);
    doc = {{"oracle", oracle::oracle_frechet(T, Q, c.delta)},
           {"decide", frechet_decide(T, Q, c.delta)}};
  } else if (what == "best-vertex") {
    if (T.size() > 12) throw InputError("best-vertex oracle needs n <= 12");
    const auto S = build_simplification(T, c.delta).curve;
    const auto U = build_universe(S, T, 4 * c.delta).universe;
    CoverageIndex idx(U, c.eps_param);
    const auto o = oracle::oracle_best_vertex_pathlet(
        S, T, ell, 4 * c.delta, U.boundaries, std::vector<bool>(U.size(), false), idx.slack());
    doc = {{"oracle_score", o.score}, {"oracle_reference", o.description},
           {"module_score", best_vertex_pathlet(S, T, ell, 4 * c.delta, idx).score}};
  } else {
    throw InputError("unknown oracle " + what);
  }
  std::cout << doc.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subtrajectory clustering with pathlets"};
  app.require_subcommand(1);

  Common cl_opt, si_opt, fs_opt, or_opt;
  std::size_t ell = 0, oracle_ell = 3;
  bool interior_disjoint = false, graph = false;
  std::string range, clustering, oracle_kind, other;

  auto* cl = app.add_subcommand("cluster", "compute an (ell, 4 delta)-clustering");
  add_common(cl, cl_opt);
  cl->add_option("--ell", ell, "maximum reference complexity (>= 2)")->required();
  cl->add_flag("--interior-disjoint", interior_disjoint,
               "split every pathlet into interior-disjoint halves");

  auto* si = app.add_subcommand("simplify", "compute the pathlet-preserving simplification");
  add_common(si, si_opt);

  auto* fsd = app.add_subcommand("inspect-fsd", "render the free space of S[i, j] against T");
  add_common(fsd, fs_opt);
  fsd->add_option("--column-range", range, "vertex range i:j of S (default: all)");
  fsd->add_option("--clustering", clustering, "clustering.json whose matchings to overlay");
  fsd->add_flag("--graph", graph, "dump the reachability graph into fsd.json");

  auto* orc = app.add_subcommand("oracle", "brute-force reference values for small inputs");
  orc->add_option("kind", oracle_kind, "min-simplification | frechet | best-vertex")->required();
  add_common(orc, or_opt, false);
  orc->add_option("--ell", oracle_ell, "reference complexity for best-vertex");
  orc->add_option("--other", other, "second curve for frechet");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*cl) return cmd_cluster(cl_opt, ell, interior_disjoint);
    if (*si) return cmd_simplify(si_opt);
    if (*fsd) return cmd_inspect_fsd(fs_opt, range, clustering, graph);
    if (*orc) return cmd_oracle(oracle_kind, or_opt, oracle_ell, other);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
