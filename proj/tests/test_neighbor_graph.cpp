#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hnnd/neighbor_graph.hpp"
#include "test_support.hpp"

namespace hnnd {
namespace {

using Ids = std::vector<std::size_t>;

TEST(KnnGraph, OneDimensionalK1) {
  const auto ds = test::line_points({0, 1, 4});
  const Distances d(ds, Metric::euclidean);
  const auto g = knn_graph(d, 1);
  EXPECT_EQ(g.neighbors(0), Ids{1});
  EXPECT_EQ(g.neighbors(1), Ids{0});
  EXPECT_EQ(g.neighbors(2), Ids{1});
  EXPECT_EQ(g.source(), GraphSource::knn);
}

TEST(KnnGraph, TieGoesToLowerIndex) {
  const auto ds = test::points2d({{0, 0}, {0, 0}, {5, 5}});
  const Distances d(ds, Metric::euclidean);
  EXPECT_EQ(knn_graph(d, 1).neighbors(2), Ids{0});
}

TEST(KnnGraph, FullKIsComplete) {
  std::mt19937_64 rng(3);
  const auto ds = test::random_numeric(rng, 9, 2);
  const Distances d(ds, Metric::euclidean);
  const auto g = knn_graph(d, ds.size() - 1);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(g.degree(i), ds.size() - 1);
    for (std::size_t j = 0; j < ds.size(); ++j) EXPECT_EQ(g.contains(i, j), i != j);
  }
}

TEST(KnnGraph, KOutOfRange) {
  const auto ds = test::line_points({0, 1, 4});
  const Distances d(ds, Metric::euclidean);
  EXPECT_THROW(knn_graph(d, 0), UsageError);
  EXPECT_THROW(knn_graph(d, 3), UsageError);
}

TEST(KnnGraph, DirectedDegreeAndSymmetrizedClosure) {
  std::mt19937_64 rng(4);
  const auto ds = test::random_numeric(rng, 40, 3);
  const Distances d(ds, Metric::euclidean);
  const auto g = knn_graph(d, 5);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(g.degree(i), 5u);
    EXPECT_FALSE(g.contains(i, i));
  }
  const auto s = knn_graph(d, 5, true);
  EXPECT_TRUE(s.is_symmetric());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j : g.neighbors(i)) {
      EXPECT_TRUE(s.contains(i, j));
      EXPECT_TRUE(s.contains(j, i));
    }
    for (std::size_t j : s.neighbors(i)) EXPECT_TRUE(g.contains(i, j) || g.contains(j, i));
  }
}

TEST(KnnGraph, MatchesBruteForceOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ds = trial % 2 ? test::random_grid(rng, 25, 2) : test::random_numeric(rng, 25, 3);
    const Distances d(ds, Metric::euclidean);
    const std::size_t k = 1 + trial % 6;
    const auto g = knn_graph(d, k);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      std::vector<std::pair<long double, std::size_t>> all;
      for (std::size_t j = 0; j < ds.size(); ++j) {
        if (j != i) all.emplace_back(test::oracle_euclid(ds, i, j), j);
      }
      std::sort(all.begin(), all.end());
      // Oracle membership: everything strictly closer than the k-th
      // distance must be present; ties at the boundary favour low ids.
      Ids expected;
      for (std::size_t r = 0; r < k; ++r) expected.push_back(all[r].second);
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(g.neighbors(i), expected) << "trial " << trial << " node " << i;
    }
  }
}

TEST(KnnGraph, KdTreeAgreesWithBruteForce) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 6; ++trial) {
    const auto ds = trial % 2 ? test::random_grid(rng, 600, 2, 12)
                              : test::random_numeric(rng, 600, 1 + trial % 4);
    const Distances d(ds, Metric::euclidean);
    const std::size_t k = 3 + trial;
    const auto brute = knn_graph(d, k, false, KnnSearch::brute_force);
    const auto tree = knn_graph(d, k, false, KnnSearch::kd_tree);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      ASSERT_EQ(brute.neighbors(i), tree.neighbors(i)) << "trial " << trial << " node " << i;
    }
  }
}

TEST(KnnGraph, KdTreeRequiresEuclidean) {
  const auto ds = test::line_points({0, 1, 2});
  const Distances d(ds, Metric::cosine);
  EXPECT_THROW(knn_graph(d, 1, false, KnnSearch::kd_tree), UsageError);
}

TEST(NeighborGraph, FromListsValidates) {
  EXPECT_THROW(NeighborGraph::from_lists({{0}}, GraphSource::external), UsageError);
  EXPECT_THROW(NeighborGraph::from_lists({{2}, {}}, GraphSource::external), UsageError);
  EXPECT_THROW(NeighborGraph::from_lists({{1, 1}, {}}, GraphSource::external), UsageError);
}

TEST(NeighborGraph, EdgeListRoundTrip) {
  std::istringstream in("0 1\n# comment\n1,2,7.5\n2 2\n");
  const auto g = load_edge_list(in, 4);
  EXPECT_EQ(g.neighbors(1), (Ids{0, 2}));
  EXPECT_EQ(g.neighbors(2), Ids{1});
  EXPECT_EQ(g.degree(3), 0u);
  EXPECT_TRUE(g.is_symmetric());
  std::istringstream bad("0 9\n");
  EXPECT_THROW(load_edge_list(bad, 4), ParseError);

  const auto ds = test::line_points({0, 1, 3, 6});
  const Distances d(ds, Metric::euclidean);
  std::ostringstream out;
  write_edge_list(g, d, out);
  EXPECT_EQ(out.str(), "0 1 1\n1 0 1\n1 2 2\n2 1 2\n");
}

}  // namespace
}  // namespace hnnd
