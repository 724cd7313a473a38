#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "pathlet/clustering.hpp"
#include "pathlet/io.hpp"
#include "test_util.hpp"

using namespace pathlet;

namespace {

PolyCurve parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_csv(in);
}

}  // namespace

TEST(ReadCsv, HeaderCommentsBlankLines) {
  const auto c = parse("x,y\n# a comment\n\n0,0\n 1.5 , -2e-1\n3,4\n");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_EQ(c.vertex(2)[0], 1.5);
  EXPECT_EQ(c.vertex(2)[1], -0.2);
}

TEST(ReadCsv, ThreeDimensionsNoHeader) {
  const auto c = parse("0,0,0\n1,2,3\n");
  EXPECT_EQ(c.dim(), 3u);
  EXPECT_EQ(c.size(), 2u);
}

TEST(ReadCsv, MalformedRowNamesLine) {
  try {
    parse("0,0\n1,1\na,b,c\n");
    FAIL() << "expected an error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ReadCsv, Errors) {
  EXPECT_THROW(parse(""), InputError);
  EXPECT_THROW(parse("# only comments\n"), InputError);
  EXPECT_THROW(parse("0,0\n1\n"), InputError);        // ragged
  EXPECT_THROW(parse("0,0\ninf,1\n"), InputError);    // non-finite
  EXPECT_THROW(parse("0,0\n1,2,\n"), InputError);     // empty field
}

TEST(Json, ClusteringRoundTrip) {
  std::mt19937_64 rng(110);
  const auto T = test::random_walk(rng, 15, 2);
  const auto c = cluster(T, 3, 0.2);
  const auto doc = io::clustering_json(c);
  const auto text = doc.dump(2);
  const auto back = io::json::parse(text);
  EXPECT_EQ(back.at("schema_version"), io::kSchemaVersion);
  EXPECT_EQ(back.at("params").at("delta_prime").get<double>(), c.delta_prime);
  const auto ps = io::pathlets_from_json(back);
  ASSERT_EQ(ps.size(), c.pathlets.size());
  for (std::size_t k = 0; k < ps.size(); ++k) {
    EXPECT_EQ(ps[k].intervals, c.pathlets[k].intervals);  // bit-exact doubles
    EXPECT_TRUE(ps[k].reference == c.pathlets[k].reference);
    EXPECT_EQ(ps[k].from, c.pathlets[k].from);
    EXPECT_EQ(ps[k].to, c.pathlets[k].to);
  }
  EXPECT_TRUE(validate_clustering(T, ps, c.ell, c.effective_delta_prime, c.tol).ok());
  EXPECT_EQ(back.at("stats").at("iterations").get<std::size_t>(), c.pathlets.size());
  EXPECT_EQ(back.at("simplification").at("breakpoints").get<std::vector<double>>(),
            c.simplification.breakpoints);
  // serialising again gives the same bytes
  EXPECT_EQ(io::clustering_json(c).dump(2), text);
}

TEST(Svg, WellFormedDocuments) {
  const auto T = PolyCurve::from_points({{0, 0}, {1, 0}, {1, 1}, {2, 1}});
  const auto c = cluster(T, 2, 0.1);
  const auto a = io::clustering_svg(T, c.pathlets);
  const auto b = io::simplification_svg(T, c.simplification);
  const auto f = io::fsd_svg(c.simplification.curve, T, c.delta_prime, {{1, 1}, {2, 2}});
  for (const auto* s : {&a, &b, &f}) {
    EXPECT_EQ(s->rfind("<svg", 0), 0u);
    EXPECT_NE(s->find("</svg>"), std::string::npos);
  }
  std::size_t dots = 0;
  for (auto p = f.find("<circle"); p != std::string::npos; p = f.find("<circle", p + 1)) ++dots;
  EXPECT_EQ(dots, 2u);
}

TEST(Svg, EmptyFreeSpaceHasNoWhiteStrips) {
  const auto W = PolyCurve::from_points({{0, 0}, {1, 0}});
  const auto T = PolyCurve::from_points({{10, 10}, {11, 10}});
  const auto s = io::fsd_svg(W, T, 0.5, {});
  std::size_t white = 0;
  for (auto p = s.find("fill=\"white\""); p != std::string::npos; p = s.find("fill=\"white\"", p + 1))
    ++white;
  EXPECT_EQ(white, 1u);  // the page background only
}
