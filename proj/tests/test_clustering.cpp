#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "hnnd/clustering.hpp"
#include "hnnd/potential.hpp"
#include "test_support.hpp"

namespace hnnd {
namespace {

using Ids = std::vector<std::size_t>;

struct FourPoint {
  Dataset ds = test::line_points({0, 1, 10, 12});
  Distances dist{ds, Metric::euclidean};
  ParentForest forest = hnnd(knn_graph(dist, 1), kernel_potential(dist, 1.0), dist);
  EdgePlot plot = edge_plot(forest, dist);
};

EdgePlot plot_of(std::vector<double> lengths) {
  EdgePlot p;
  for (std::size_t i = 0; i < lengths.size(); ++i) p.entries.push_back({i + 1, 0, lengths[i]});
  return p;
}

std::vector<std::string> as_strings(const std::vector<std::size_t>& v) {
  std::vector<std::string> out;
  for (auto x : v) out.push_back(std::to_string(x));
  return out;
}

TEST(EdgePlot, FourPointLengths) {
  const FourPoint f;
  EXPECT_EQ(f.plot.lengths(), (std::vector<double>{9, 2, 1}));
  EXPECT_EQ(f.plot.entries[0], (EdgePlotEntry{2, 1, 9}));
  std::ostringstream out;
  write_edge_plot(f.plot, out);
  EXPECT_EQ(out.str(), "1,9,2,1\n2,2,3,2\n3,1,0,1\n");
}

TEST(EdgePlot, SingleNodeIsEmpty) {
  const auto ds = test::line_points({1});
  const Distances d(ds, Metric::euclidean);
  EXPECT_EQ(edge_plot(nd_full(kernel_potential(d, 1.0), d), d).size(), 0u);
}

TEST(EdgePlot, EqualLengthsOrderedByChild) {
  const auto ds = test::line_points({0, 1, 2});
  const Distances d(ds, Metric::euclidean);
  ParentForest f{{1, 1, 1}, {1}, ForestStage::merged};
  const auto plot = edge_plot(f, d);
  ASSERT_EQ(plot.size(), 2u);
  EXPECT_EQ(plot.entries[0].child, 0u);
  EXPECT_EQ(plot.entries[1].child, 2u);
}

TEST(Cut, CountExamples) {
  const FourPoint f;
  const auto none = cut_by_count(f.forest, f.plot, 0);
  EXPECT_EQ(none.count, 1u);
  EXPECT_EQ(none.labels, (Ids{1, 1, 1, 1}));
  const auto two = cut_by_count(f.forest, f.plot, 1);
  EXPECT_EQ(two.count, 2u);
  EXPECT_EQ(two.labels, (Ids{1, 1, 2, 2}));
  const auto all = cut_by_count(f.forest, f.plot, 3);
  EXPECT_EQ(all.count, 4u);
  EXPECT_EQ(all.labels, (Ids{0, 1, 2, 3}));
  EXPECT_THROW(cut_by_count(f.forest, f.plot, 4), UsageError);
  std::ostringstream out;
  write_labels(two, out);
  EXPECT_EQ(out.str(), "0,1\n1,1\n2,2\n3,2\n");
}

TEST(Cut, ThresholdExamples) {
  const FourPoint f;
  EXPECT_EQ(cut_by_threshold(f.forest, f.plot, 5.0).labels, (Ids{1, 1, 2, 2}));
  EXPECT_EQ(cut_by_threshold(f.forest, f.plot, 9.0).count, 1u);  // edges equal to t stay
  EXPECT_EQ(cut_by_threshold(f.forest, f.plot, 0.0).count, 4u);
  EXPECT_THROW(cut_by_threshold(f.forest, f.plot, -1.0), UsageError);
}

TEST(Cut, RootLabelsRejectsCycles) {
  EXPECT_THROW(root_labels(Ids{1, 0}), UsageError);
  EXPECT_THROW(root_labels(Ids{1, 2, 1}), UsageError);
}

TEST(MstCut, Examples) {
  const auto ds = test::line_points({0, 1, 3});
  const auto tree = mst(Distances(ds, Metric::euclidean));
  EXPECT_EQ(mst_cut(tree, 0).labels, (Ids{0, 0, 0}));
  const auto one = mst_cut(tree, 1);
  EXPECT_EQ(one.labels, (Ids{0, 0, 2}));
  EXPECT_EQ(one.count, 2u);
  EXPECT_EQ(mst_cut(tree, 2).count, 3u);
  EXPECT_THROW(mst_cut(tree, 3), UsageError);
}

TEST(ErrorRate, IdentityAndRenaming) {
  const Ids pred{0, 0, 1, 1, 2, 2};
  const std::vector<std::string> truth{"a", "a", "b", "b", "c", "c"};
  const auto r = error_rate({pred, 3}, truth);
  EXPECT_EQ(r.errors, 0u);
  EXPECT_EQ(r.clusters, 3u);
  EXPECT_EQ(error_rate({Ids{7, 7, 3, 3, 5, 5}, 3}, truth).errors, 0u);
}

TEST(ErrorRate, MergedClassesCostOneClass) {
  Ids pred;
  std::vector<std::string> truth;
  for (std::size_t c = 0; c < 3; ++c) {
    for (int k = 0; k < 50; ++k) {
      pred.push_back(c == 2 ? 1 : 0);
      truth.push_back("class" + std::to_string(c));
    }
  }
  const auto r = error_rate({pred, 2}, truth);
  EXPECT_EQ(r.errors, 50u);
  EXPECT_DOUBLE_EQ(r.rate, 1.0 / 3.0);
  EXPECT_THROW(error_rate({pred, 2}, std::vector<std::string>{"a"}), UsageError);
}

TEST(ErrorRate, HungarianMatchesExhaustiveOracle) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + trial % 6, cols = 1 + (trial / 6) % 6;
    std::uniform_int_distribution<long> u(0, 20);
    std::vector<std::vector<long>> table(rows, std::vector<long>(cols));
    for (auto& r : table) {
      for (auto& x : r) x = u(rng);
    }
    const auto match = max_weight_assignment(table);
    ASSERT_EQ(match.size(), rows);
    long got = 0;
    std::set<long> used;
    for (std::size_t r = 0; r < rows; ++r) {
      if (match[r] < 0) continue;
      EXPECT_TRUE(used.insert(match[r]).second);
      got += table[r][static_cast<std::size_t>(match[r])];
    }
    EXPECT_EQ(static_cast<std::size_t>(got), test::oracle_best_matching(table)) << "trial " << trial;
  }
}

TEST(ErrorRate, InvariantUnderRelabeling) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + trial % 40;
    std::uniform_int_distribution<std::size_t> c(0, 4), t(0, 3);
    Ids pred(n);
    Ids truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] = c(rng);
      truth[i] = t(rng);
    }
    const auto base = error_rate({pred, 0}, as_strings(truth));
    Ids pred2 = pred, truth2 = truth;
    for (auto& x : pred2) x = 100 - 7 * x;
    for (auto& x : truth2) x = (x + 3) % 4 + 10;
    EXPECT_EQ(error_rate({pred2, 0}, as_strings(truth2)).errors, base.errors);
  }
}

TEST(Saliency, Examples) {
  EXPECT_DOUBLE_EQ(saliency_gap(plot_of({9, 2, 1}), 1), 4.5);
  EXPECT_DOUBLE_EQ(saliency_gap(plot_of({3, 3, 3, 3}), 2), 1.0);
  EXPECT_DOUBLE_EQ(saliency_gap(plot_of({10, 10, 1}), 2), 10.0);
  EXPECT_TRUE(std::isinf(saliency_gap(plot_of({4, 0, 0}), 1)));
  EXPECT_THROW(saliency_gap(plot_of({9, 2, 1}), 0), UsageError);
  EXPECT_THROW(saliency_gap(plot_of({9, 2, 1}), 3), UsageError);
}

}  // namespace
}  // namespace hnnd
