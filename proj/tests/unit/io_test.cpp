#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "hdr/errors.hpp"
#include "hdr/io.hpp"
#include "support.hpp"

namespace hdr {
namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hdr_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(ParseTsplib, ThreeFourFive) {
  const Instance inst = parse_tsplib_text(
      "NAME : tri\nTYPE : TSP\nCOMMENT : 3-4-5\nDIMENSION : 3\n"
      "EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n");
  EXPECT_EQ(inst.size(), 3);
  EXPECT_EQ(inst.name(), "tri");
  EXPECT_EQ(inst.edge_cost(0, 1), 3);
  EXPECT_EQ(inst.edge_cost(1, 2), 5);
  EXPECT_EQ(inst.level(), 0);
  EXPECT_FALSE(inst.has_forced_edges());
}

TEST(ParseTsplib, LooseSyntax) {
  const Instance inst = parse_tsplib_text(
      "NAME: x\r\nTYPE: TSP\r\nDIMENSION: 4\r\nEDGE_WEIGHT_TYPE: CEIL_2D\r\n"
      "NODE_COORD_SECTION\r\n  3 1.5e2 2\r\n1 0 0\r\n4 -1 7.25\r\n2 10 0\r\n");
  EXPECT_EQ(inst.metric(), Metric::kCeil2D);
  EXPECT_EQ(inst.coord(2), (Point{150, 2}));
  EXPECT_EQ(inst.coord(3), (Point{-1, 7.25}));
}

TEST(ParseTsplib, Errors) {
  EXPECT_THROW(parse_tsplib_text("TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EXPLICIT\n"),
               UnsupportedFormat);
  EXPECT_THROW(parse_tsplib_text("TYPE : ATSP\nDIMENSION : 3\n"), UnsupportedFormat);
  EXPECT_THROW(parse_tsplib_text("TYPE : TSP\nDIMENSION : 4\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                                 "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\nEOF\n"),
               MalformedFile);
  EXPECT_THROW(parse_tsplib_text("TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                                 "NODE_COORD_SECTION\n1 0 0\n2 1 0\n3 0 1\n4 1 1\nEOF\n"),
               MalformedFile);
  EXPECT_THROW(parse_tsplib_text("TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                                 "NODE_COORD_SECTION\n1 0 0\n1 1 0\n3 0 1\nEOF\n"),
               MalformedFile);
  EXPECT_THROW(parse_tsplib_text("TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\n"
                                 "NODE_COORD_SECTION\n1 0 zero\n2 1 0\n3 0 1\nEOF\n"),
               MalformedFile);
  EXPECT_THROW(parse_tsplib(temp_file("does_not_exist.tsp")), MalformedFile);
}

TEST(WriteTsplib, RoundTrip) {
  const std::vector<Point> pts{{0.1, 1e-7}, {123456789.125, -3}, {1.0 / 3.0, 2.0 / 7.0}};
  const Instance a(pts, Metric::kCeil2D, {}, 0, "odd");
  const auto path = temp_file("round.tsp");
  write_tsplib(path, a);
  const Instance b = parse_tsplib(path);
  EXPECT_EQ(b.metric(), Metric::kCeil2D);
  EXPECT_EQ(b.name(), "odd");
  ASSERT_EQ(b.size(), 3);
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(b.coord(v), a.coord(v));

  const Instance g = generate_instance(InstanceKind::kClustered, 500, 1000000, 3);
  write_tsplib(path, g);
  const Instance h = parse_tsplib(path);
  for (Vertex v = 0; v < 500; ++v) ASSERT_EQ(h.coord(v), g.coord(v));
}

TEST(TourFiles, RoundTripAndIdentity) {
  const Instance inst = testing::random_instance(30, 2);
  Rng rng(1);
  std::vector<Vertex> order(30);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const Tour t = Tour::from_order(inst, order);
  const auto path = temp_file("t.tour");
  write_tour(path, t);
  EXPECT_EQ(parse_tour(path, 30), order);

  std::string canon = "NAME : c\nTYPE : TOUR\nDIMENSION : 5\nTOUR_SECTION\n";
  for (int i = 1; i <= 5; ++i) canon += std::to_string(i) + "\n";
  canon += "-1\nEOF\n";
  EXPECT_EQ(parse_tour_text(canon, 5), (std::vector<Vertex>{0, 1, 2, 3, 4}));
}

TEST(TourFiles, Errors) {
  EXPECT_THROW(parse_tour_text("TOUR_SECTION\n1\n2\n3\n-1\n", 4), MalformedFile);
  EXPECT_THROW(parse_tour_text("TOUR_SECTION\n1\n2\n3\n9\n-1\n", 4), MalformedFile);
  EXPECT_THROW(parse_tour_text("TOUR_SECTION\n1\n2\n2\n3\n-1\n", 4), MalformedFile);
  EXPECT_THROW(parse_tour_text("1\n2\n3\n4\n", 4), MalformedFile);
  EXPECT_THROW(parse_tour_text("DIMENSION : 5\nTOUR_SECTION\n1\n2\n3\n4\n-1\n", 4),
               MalformedFile);
}

TEST(Generator, Deterministic) {
  const Instance a = generate_instance(InstanceKind::kUniform, 1000, 1000000, 42);
  const Instance b = generate_instance(InstanceKind::kUniform, 1000, 1000000, 42);
  const Instance c = generate_instance(InstanceKind::kUniform, 1000, 1000000, 43);
  bool differs = false;
  for (Vertex v = 0; v < 1000; ++v) {
    ASSERT_EQ(a.coord(v), b.coord(v));
    differs = differs || !(a.coord(v) == c.coord(v));
  }
  EXPECT_TRUE(differs);
}

TEST(Generator, UniformMeanAndRange) {
  const Instance inst = generate_instance(InstanceKind::kUniform, 10000, 1000000, 7);
  double sum = 0;
  for (const Point& p : inst.coords()) {
    ASSERT_EQ(p.x, std::floor(p.x));
    ASSERT_GE(p.x, 0);
    ASSERT_LE(p.x, 1000000);
    ASSERT_GE(p.y, 0);
    ASSERT_LE(p.y, 1000000);
    sum += p.x;
  }
  EXPECT_NEAR(sum / 10000, 500000, 5000);
}

TEST(Generator, ClusteredPointsNearCenters) {
  const auto g = generate_instance_detailed(InstanceKind::kClustered, 1000, 1000000, 5);
  EXPECT_EQ(g.centers.size(), 10u);
  EXPECT_DOUBLE_EQ(g.sigma, 10000);
  int close = 0;
  for (Vertex v = 0; v < 1000; ++v) {
    EXPECT_EQ(g.assignment[v], v % 10);
    const Point& p = g.instance.coord(v);
    const Point& c = g.centers[g.assignment[v]];
    if (std::abs(p.x - c.x) <= 3 * g.sigma && std::abs(p.y - c.y) <= 3 * g.sigma) ++close;
    EXPECT_GE(p.x, 0);
    EXPECT_LE(p.y, 1000000);
  }
  EXPECT_GE(close, 900);
}

TEST(Report, GapArithmetic) {
  std::vector<RunRecord> runs(2);
  runs[0].cost = 100;
  runs[1].cost = 102;
  const auto r = report_results(runs, 100);
  EXPECT_EQ(r.best, 100);
  EXPECT_EQ(format_gap(*r.best_gap), "0.0000%");
  EXPECT_EQ(format_gap(*r.average_gap), "1.0000%");
  EXPECT_NE(r.to_structured().find("average_gap=1.0000%"), std::string::npos);
}

TEST(Report, NoReferenceNoGaps) {
  std::vector<RunRecord> runs(3);
  runs[0].cost = 10;
  runs[1].cost = 12;
  runs[2].cost = 11;
  const auto r = report_results(runs);
  EXPECT_FALSE(r.best_gap);
  EXPECT_FALSE(r.average_gap);
  EXPECT_EQ(r.best, 10);
  EXPECT_DOUBLE_EQ(r.average, 11.0);
  EXPECT_EQ(r.to_structured().find("gap"), std::string::npos);
  EXPECT_THROW(report_results({}), ContractViolation);
}

TEST(Report, TableRowsAndKnownGap) {
  std::vector<RunRecord> runs(10);
  for (int i = 0; i < 10; ++i) {
    runs[i].cost = 71868057 + i;
    runs[i].instance = "E10k.0";
    runs[i].seed = i;
  }
  const auto r = report_results(runs, 71865826);
  EXPECT_EQ(format_gap(*r.best_gap), "0.0031%");
  const std::string table = r.to_table();
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 1 + 10 + 2);
  EXPECT_NE(table.find("Best"), std::string::npos);
  EXPECT_NE(table.find("Average"), std::string::npos);
}

TEST(Svg, ContainsEveryVertex) {
  const Instance inst = testing::random_instance(20, 1);
  const std::string svg = render_svg(inst, Tour::identity(inst));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(std::count(svg.begin(), svg.end(), ','), 20);
}

}  // namespace
}  // namespace hdr
