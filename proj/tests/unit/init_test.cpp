#include <gtest/gtest.h>

#include <algorithm>

#include "hdr/errors.hpp"
#include "hdr/init.hpp"
#include "hdr/io.hpp"
#include "support.hpp"

namespace hdr {
namespace {

TEST(InitialTour, Triangle) {
  const Instance inst({{0, 0}, {4, 0}, {0, 3}}, Metric::kEuc2D);
  Rng rng(1);
  const Tour t = build_initial_tour(inst, InitConfig{}, rng);
  EXPECT_EQ(t.cost(), 12);
  EXPECT_TRUE(validate_tour(inst, t).ok());
}

TEST(InitialTour, UnitSquarePerimeter) {
  const Instance inst({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, Metric::kEuc2D);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Tour t = build_initial_tour(inst, InitConfig{}, rng);
    EXPECT_EQ(t.cost(), 4);
  }
}

TEST(InitialTour, SquareWithSpreadCornersIsPerimeter) {
  // Crossing tours cost more than the perimeter here.
  const Instance inst({{0, 0}, {100, 100}, {0, 100}, {100, 0}}, Metric::kEuc2D);
  Rng rng(3);
  EXPECT_EQ(build_initial_tour(inst, InitConfig{}, rng).cost(), 400);
}

TEST(InitialTour, FeasibleAndDeterministic) {
  for (int n : {5, 17, 100, 1000, 5000}) {
    const Instance inst = testing::random_instance(n, n, 1000000);
    Rng a(9), b(9);
    const Tour ta = build_initial_tour(inst, InitConfig{}, a);
    const Tour tb = build_initial_tour(inst, InitConfig{}, b);
    EXPECT_TRUE(validate_tour(inst, ta).ok()) << n;
    EXPECT_EQ(ta, tb);
  }
}

TEST(InitialTour, KeepsForcedPaths) {
  Rng gen(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance base = testing::random_instance(30 + trial * 7, trial, 10000);
    std::vector<Point> pts(base.coords().begin(), base.coords().end());
    const auto forced = testing::random_forced_paths(pts, gen, 0.2 + trial % 4 * 0.2);
    const Instance inst(pts, Metric::kEuc2D, forced, 1);
    Rng rng(trial);
    const Tour t = build_initial_tour(inst, InitConfig{}, rng);
    ASSERT_TRUE(validate_tour(inst, t).ok()) << validate_tour(inst, t).to_string();
  }
}

TEST(InitialTour, CoincidentAndClusteredPoints) {
  std::vector<Point> pts(50, Point{7, 7});
  const Instance same(pts, Metric::kEuc2D);
  Rng rng(1);
  EXPECT_TRUE(validate_tour(same, build_initial_tour(same, InitConfig{}, rng)).ok());
  const Instance clustered =
      generate_instance(InstanceKind::kClustered, 3000, 1000000, 2);
  EXPECT_TRUE(
      validate_tour(clustered, build_initial_tour(clustered, InitConfig{}, rng)).ok());
}

TEST(TwoOptWindow, RemovesCrossingLikeEnumeration) {
  // Path 0-1-2-3 uses both diagonals of a square, which cross.
  const Instance inst({{0, 0}, {100, 100}, {0, 100}, {100, 0}, {50, -300}},
                      Metric::kEuc2D);
  Tour t = Tour::from_order(inst, {0, 1, 2, 3, 4});
  const Cost before = t.cost();
  // Cheapest arrangement of the interior with endpoints 0 and 3 fixed.
  Cost best = before;
  for (auto mid : {std::vector<Vertex>{1, 2}, std::vector<Vertex>{2, 1}}) {
    best = std::min(best, tour_cost(inst, std::vector<Vertex>{0, mid[0], mid[1], 3, 4}));
  }
  ASSERT_LT(best, before);
  const Cost gain = two_opt_window(inst, t, 0, 4);
  EXPECT_GT(gain, 0);
  EXPECT_EQ(t.cost(), best);
  EXPECT_EQ(t.cost(), before - gain);
  EXPECT_TRUE(validate_tour(inst, t).ok());
}

TEST(TwoOptWindow, FixedPointLeavesTourUnchanged) {
  const Instance inst({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {2, 5}}, Metric::kEuc2D);
  Tour t = Tour::from_order(inst, {0, 1, 2, 3, 4});
  const Tour before = t;
  EXPECT_EQ(two_opt_window(inst, t, 0, 4), 0);
  EXPECT_EQ(t, before);
}

TEST(TwoOptWindow, KeepsForcedEdge) {
  // The crossing pair includes forced edge (0, 1); it must survive.
  const Instance inst({{0, 0}, {100, 100}, {0, 100}, {100, 0}, {50, -300}},
                      Metric::kEuc2D, {{0, 1, 141}});
  Tour t = Tour::from_order(inst, {0, 1, 2, 3, 4});
  const Tour before = t;
  EXPECT_EQ(two_opt_window(inst, t, 0, 4), 0);
  EXPECT_EQ(t, before);
  EXPECT_TRUE(t.adjacent(0, 1));
  EXPECT_TRUE(validate_tour(inst, t).ok());
}

TEST(TwoOptWindow, RejectsBadWindow) {
  const Instance inst = testing::random_instance(10, 1);
  Tour t = Tour::identity(inst);
  EXPECT_THROW(two_opt_window(inst, t, 0, 3), ContractViolation);
  EXPECT_THROW(two_opt_window(inst, t, 0, 11), ContractViolation);
}

// Exhaustive check that no improving in-window exchange is left.
bool window_two_opt_optimal(const Instance& inst, const Tour& t, int start, int len) {
  std::vector<Vertex> w(len);
  for (int i = 0; i < len; ++i) w[i] = t.at((start + i) % t.size());
  for (int i = 0; i + 1 < len; ++i) {
    for (int j = i + 2; j + 1 < len; ++j) {
      if (inst.is_forced(w[i], w[i + 1]) || inst.is_forced(w[j], w[j + 1])) continue;
      const Cost d = inst.cost(w[i], w[i + 1]) + inst.cost(w[j], w[j + 1]) -
                     inst.cost(w[i], w[j]) - inst.cost(w[i + 1], w[j + 1]);
      if (d > 0) return false;
    }
  }
  return true;
}

TEST(TwoOptWindow, ReachesWindowLocalOptimumAndOnlyTouchesWindow) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 8 + static_cast<int>(uniform_below(rng, 200));
    const Instance base = testing::random_instance(n, 500 + trial, trial % 2 ? 30 : 100000);
    std::vector<Point> pts(base.coords().begin(), base.coords().end());
    std::vector<ForcedEdge> forced;
    if (trial % 3 == 0) forced = testing::random_forced_paths(pts, rng, 0.3);
    const Instance inst(pts, Metric::kEuc2D, forced, 1);
    Rng init_rng(trial);
    Tour t = build_initial_tour(inst, InitConfig{0.5, 1}, init_rng);
    if (forced.empty()) {
      std::vector<Vertex> order(t.order().begin(), t.order().end());
      std::shuffle(order.begin(), order.end(), rng);
      t = Tour::from_order(inst, order);
    }
    const int start = static_cast<int>(uniform_below(rng, n));
    const int len = 4 + static_cast<int>(uniform_below(rng, n - 3));
    const Tour before = t;
    const Cost gain = two_opt_window(inst, t, start, len);
    ASSERT_GE(gain, 0);
    ASSERT_EQ(t.cost(), before.cost() - gain);
    ASSERT_TRUE(validate_tour(inst, t).ok());
    if (gain == 0) ASSERT_EQ(t, before);
    ASSERT_TRUE(window_two_opt_optimal(inst, t, start, len)) << trial;
    for (int i = len; i < n; ++i) {
      const int p = (start + i) % n;
      ASSERT_EQ(t.at(p), before.at(p));
    }
    ASSERT_EQ(t.at(start), before.at(start));
    ASSERT_EQ(t.at((start + len - 1) % n), before.at((start + len - 1) % n));
  }
}

}  // namespace
}  // namespace hdr
