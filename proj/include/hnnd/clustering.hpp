#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hnnd/assignment.hpp"
#include "hnnd/descent.hpp"
#include "hnnd/errors.hpp"
#include "hnnd/metric.hpp"
#include "hnnd/mst.hpp"

namespace hnnd {

struct EdgePlotEntry {
  std::size_t child = 0;
  std::size_t parent = 0;
  double length = 0.0;

  friend bool operator==(const EdgePlotEntry&, const EdgePlotEntry&) = default;
};

/// Edge lengths in decreasing order; equal lengths keep the lower child
/// first. Reading it top-down shows which edges to cut.
struct EdgePlot {
  std::vector<EdgePlotEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<double> lengths() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.length);
    return out;
  }
};

namespace detail {

inline void sort_plot(std::vector<EdgePlotEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const EdgePlotEntry& a, const EdgePlotEntry& b) {
    if (a.length != b.length) return a.length > b.length;
    if (a.child != b.child) return a.child < b.child;
    return a.parent < b.parent;
  });
}

}  // namespace detail

inline EdgePlot edge_plot(const ParentForest& forest, const Distances& dist) {
  EdgePlot plot;
  plot.entries.reserve(forest.edge_count());
  for (std::size_t i = 0; i < forest.size(); ++i) {
    if (!forest.is_root(i)) plot.entries.push_back({i, forest.parent[i], dist(i, forest.parent[i])});
  }
  detail::sort_plot(plot.entries);
  return plot;
}

/// MST edges in child/parent form (child = lower id of the pair).
inline EdgePlot edge_plot(const WeightedTreeEdges& tree) {
  EdgePlot plot;
  plot.entries.reserve(tree.edges.size());
  for (const auto& e : tree.edges) plot.entries.push_back({e.u, e.v, e.length});
  detail::sort_plot(plot.entries);
  return plot;
}

/// Cluster id per node. For in-tree cuts the id is the root a node
/// reaches; for MST cuts it is the lowest id in the component.
struct ClusterLabeling {
  std::vector<std::size_t> labels;
  std::size_t count = 0;
};

/// Follows parent pointers to the roots. Each node is resolved once (path
/// memoisation), so the whole search is O(N). Throws on a cycle.
inline ClusterLabeling root_labels(std::span<const std::size_t> parent) {
  const std::size_t n = parent.size();
  constexpr std::size_t unknown = std::numeric_limits<std::size_t>::max();
  ClusterLabeling out{std::vector<std::size_t>(n, unknown), 0};
  std::vector<std::size_t> path;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cur = i;
    path.clear();
    while (out.labels[cur] == unknown && parent[cur] != cur) {
      path.push_back(cur);
      if (path.size() > n) throw UsageError("parent pointers contain a cycle");
      cur = parent[cur];
      if (cur >= n) throw UsageError("parent pointer out of range");
    }
    const std::size_t root = out.labels[cur] == unknown ? cur : out.labels[cur];
    if (out.labels[cur] == unknown) {
      out.labels[cur] = root;
      ++out.count;
    }
    for (std::size_t p : path) out.labels[p] = root;
  }
  return out;
}

/// Removes the k longest edges (the first k plot entries) and labels the
/// resulting sub-trees by their roots.
inline ClusterLabeling cut_by_count(const ParentForest& forest, const EdgePlot& plot, std::size_t k) {
  if (k > plot.size()) {
    throw UsageError("cannot cut " + std::to_string(k) + " edges; the tree has " +
                     std::to_string(plot.size()));
  }
  std::vector<std::size_t> parent = forest.parent;
  for (std::size_t r = 0; r < k; ++r) parent[plot.entries[r].child] = plot.entries[r].child;
  return root_labels(parent);
}

/// Removes every edge longer than t.
inline ClusterLabeling cut_by_threshold(const ParentForest& forest, const EdgePlot& plot, double t) {
  if (!(t >= 0.0)) throw UsageError("cut threshold must be non-negative");
  std::vector<std::size_t> parent = forest.parent;
  for (const auto& e : plot.entries) {
    if (e.length > t) parent[e.child] = e.child;
  }
  return root_labels(parent);
}

/// Removes the k longest MST edges (equal lengths: lower id pair first)
/// and labels connected components by their lowest node id.
inline ClusterLabeling mst_cut(const WeightedTreeEdges& tree, std::size_t k) {
  if (k > tree.edges.size()) {
    throw UsageError("cannot cut " + std::to_string(k) + " edges; the tree has " +
                     std::to_string(tree.edges.size()));
  }
  const auto plot = edge_plot(tree);
  std::vector<std::size_t> link(tree.nodes);
  std::iota(link.begin(), link.end(), std::size_t{0});
  const auto find = [&](std::size_t x) {
    while (link[x] != x) x = link[x] = link[link[x]];
    return x;
  };
  for (std::size_t r = k; r < plot.size(); ++r) {
    const std::size_t a = find(plot.entries[r].child), b = find(plot.entries[r].parent);
    if (a != b) link[std::max(a, b)] = std::min(a, b);
  }
  ClusterLabeling out{std::vector<std::size_t>(tree.nodes), 0};
  for (std::size_t i = 0; i < tree.nodes; ++i) {
    out.labels[i] = find(i);
    if (out.labels[i] == i) ++out.count;
  }
  return out;
}

struct ErrorReport {
  std::size_t errors = 0;
  double rate = 0.0;
  std::size_t clusters = 0;
};

/// Misassignment count after the best one-to-one matching of clusters to
/// classes. Clusters left unmatched count entirely as errors.
inline ErrorReport error_rate(const ClusterLabeling& pred, std::span<const std::string> truth) {
  const std::size_t n = pred.labels.size();
  if (truth.size() != n) {
    throw UsageError("truth has " + std::to_string(truth.size()) + " labels, prediction has " +
                     std::to_string(n));
  }
  std::map<std::size_t, std::size_t> cluster_row;
  std::map<std::string, std::size_t, std::less<>> class_col;
  for (std::size_t i = 0; i < n; ++i) {
    cluster_row.try_emplace(pred.labels[i], cluster_row.size());
    class_col.try_emplace(truth[i], class_col.size());
  }
  std::vector<std::vector<long>> table(cluster_row.size(), std::vector<long>(class_col.size(), 0));
  for (std::size_t i = 0; i < n; ++i) {
    ++table[cluster_row[pred.labels[i]]][class_col.find(truth[i])->second];
  }
  const auto match = max_weight_assignment(table);
  std::size_t matched = 0;
  for (std::size_t r = 0; r < match.size(); ++r) {
    if (match[r] >= 0) matched += static_cast<std::size_t>(table[r][static_cast<std::size_t>(match[r])]);
  }
  ErrorReport report;
  report.errors = n - matched;
  report.rate = n == 0 ? 0.0 : static_cast<double>(report.errors) / static_cast<double>(n);
  report.clusters = cluster_row.size();
  return report;
}

/// Mean of the k longest edges over the (k+1)-th longest. Infinity when
/// the (k+1)-th edge has zero length.
inline double saliency_gap(const EdgePlot& plot, std::size_t k) {
  if (k < 1 || k >= plot.size()) {
    throw UsageError("saliency gap needs 1 <= k < " + std::to_string(plot.size()) + ", got k=" +
                     std::to_string(k));
  }
  double top = 0.0;
  for (std::size_t r = 0; r < k; ++r) top += plot.entries[r].length;
  const double next = plot.entries[k].length;
  if (next == 0.0) return std::numeric_limits<double>::infinity();
  return top / static_cast<double>(k) / next;
}

/// "id,label" rows.
inline void write_labels(const ClusterLabeling& labels, std::ostream& out) {
  for (std::size_t i = 0; i < labels.labels.size(); ++i) out << i << ',' << labels.labels[i] << '\n';
}

/// "rank,length,child,parent" rows, rank counted from 1.
inline void write_edge_plot(const EdgePlot& plot, std::ostream& out) {
  for (std::size_t r = 0; r < plot.size(); ++r) {
    const auto& e = plot.entries[r];
    out << r + 1 << ',' << detail::format_real(e.length) << ',' << e.child << ',' << e.parent << '\n';
  }
}

}  // namespace hnnd
