#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hnnd/delaunay.hpp"
#include "hnnd/predicates.hpp"
#include "test_support.hpp"

namespace hnnd {
namespace {

using Ids = std::vector<std::size_t>;
using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

EdgeSet edges_of(const NeighborGraph& g) {
  EdgeSet out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j : g.neighbors(i)) {
      if (i < j) out.insert({i, j});
    }
  }
  return out;
}

TEST(Predicates, OrientAndIncircleSigns) {
  using geometry::Point2;
  EXPECT_EQ(geometry::orient2d({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(geometry::orient2d({0, 0}, {0, 1}, {1, 0}), -1);
  EXPECT_EQ(geometry::orient2d({0, 0}, {1, 1}, {3, 3}), 0);
  EXPECT_EQ(geometry::incircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}), 1);
  EXPECT_EQ(geometry::incircle({0, 0}, {1, 0}, {0, 1}, {1, 1}), 0);
  EXPECT_EQ(geometry::incircle({0, 0}, {1, 0}, {0, 1}, {2, 2}), -1);
}

TEST(Predicates, NearlyCollinearResolvedExactly) {
  // Classic failure case for naive floating point orientation.
  const double eps = std::ldexp(1.0, -52);
  const geometry::Point2 a{0.5, 0.5}, b{12, 12}, c{24, 24};
  EXPECT_EQ(geometry::orient2d(a, b, c), 0);
  EXPECT_EQ(geometry::orient2d({0.5 + eps, 0.5}, b, c), -1);
  EXPECT_EQ(geometry::orient2d({0.5 - eps / 2, 0.5}, b, c), 1);
}

TEST(Delaunay, SingleTriangle) {
  const auto g = delaunay_2d(test::points2d({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(g.neighbors(0), (Ids{1, 2}));
  EXPECT_EQ(g.neighbors(1), (Ids{0, 2}));
  EXPECT_EQ(g.neighbors(2), (Ids{0, 1}));
  EXPECT_EQ(g.source(), GraphSource::delaunay);
}

TEST(Delaunay, InteriorPointJoinsHull) {
  const std::vector<std::pair<double, double>> pts{{0, 0}, {4, 0}, {2, 3}, {2, 1}};
  const auto g = delaunay_2d(test::points2d(pts));
  EXPECT_EQ(edges_of(g).size(), 6u);
  EXPECT_EQ(g.neighbors(3), (Ids{0, 1, 2}));
  EXPECT_EQ(edges_of(g), test::oracle_delaunay_edges(pts));
}

TEST(Delaunay, CollinearIsAnError) {
  EXPECT_THROW(delaunay_2d(test::points2d({{0, 0}, {1, 1}, {2, 2}})), GeometryError);
  EXPECT_THROW(delaunay_2d(test::points2d({{0, 0}, {1, 1}, {1, 1}})), GeometryError);
}

TEST(Delaunay, WrongDimensionIsUsageError) {
  EXPECT_THROW(delaunay_2d(test::line_points({0, 1, 2})), UsageError);
}

TEST(Delaunay, MatchesEmptyCircumcircleOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 10;  // 3..12
    std::vector<std::pair<double, double>> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const auto g = delaunay_2d(test::points2d(pts));
    ASSERT_TRUE(g.is_symmetric());
    ASSERT_EQ(edges_of(g), test::oracle_delaunay_edges(pts)) << "trial " << trial;
  }
}

TEST(Delaunay, EulerCountOnLargerInputs) {
  // For points in general position: E = 3n - 3 - h, h = hull size.
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> pts(2000);
  for (auto& p : pts) p = {u(rng), u(rng)};
  const auto g = delaunay_2d(test::points2d(pts));
  std::size_t hull = 0;
  {
    // Monotone chain hull size.
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    auto cross = [](auto o, auto a, auto b) {
      return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> h(2 * sorted.size());
    std::size_t k = 0;
    for (const auto& p : sorted) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
      h[k++] = p;
    }
    for (std::size_t i = sorted.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(h[k - 2], h[k - 1], sorted[i]) <= 0) --k;
      h[k++] = sorted[i];
    }
    hull = k - 1;
  }
  EXPECT_EQ(edges_of(g).size(), 3 * pts.size() - 3 - hull);
}

TEST(Delaunay, CocircularGridIsValidTriangulation) {
  // A square lattice is maximally degenerate; the result must still be a
  // triangulation: E = 3n - 3 - h with h counting hull vertices (corners
  // and collinear boundary points).
  std::vector<std::pair<double, double>> pts;
  for (int x = 0; x < 6; ++x) {
    for (int y = 0; y < 5; ++y) pts.emplace_back(x, y);
  }
  const auto g = delaunay_2d(test::points2d(pts));
  const std::size_t hull = 2 * (6 + 5) - 4;
  EXPECT_EQ(edges_of(g).size(), 3 * pts.size() - 3 - hull);
  // Lattice edges of unit length are always Delaunay.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
      if (dx * dx + dy * dy == 1.0) EXPECT_TRUE(g.contains(i, j));
    }
  }
}

TEST(Delaunay, DuplicatesShareNeighbours) {
  const auto g = delaunay_2d(test::points2d({{0, 0}, {4, 0}, {2, 3}, {4, 0}}));
  EXPECT_EQ(g.neighbors(1), (Ids{0, 2, 3}));
  EXPECT_EQ(g.neighbors(3), (Ids{0, 1, 2}));
  EXPECT_EQ(g.neighbors(0), (Ids{1, 2, 3}));
  EXPECT_TRUE(g.is_symmetric());
}

}  // namespace
}  // namespace hnnd
