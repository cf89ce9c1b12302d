#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hnnd/dataset.hpp"
#include "hnnd/errors.hpp"
#include "hnnd/kd_tree.hpp"
#include "hnnd/metric.hpp"

namespace hnnd {

enum class GraphSource { knn, delaunay, mst, complete, external };

inline std::string_view to_string(GraphSource s) {
  switch (s) {
    case GraphSource::knn: return "knn";
    case GraphSource::delaunay: return "dt";
    case GraphSource::mst: return "mst";
    case GraphSource::complete: return "complete";
    case GraphSource::external: return "file";
  }
  return "?";
}

/// Per-node neighbor sets, the locality constraint of nearest neighbor
/// descent. Stored as compressed rows; a complete graph is kept implicit
/// so K = N - 1 does not cost N^2 memory.
class NeighborGraph {
 public:
  NeighborGraph() = default;

  static NeighborGraph complete(std::size_t n, GraphSource source = GraphSource::complete) {
    NeighborGraph g;
    g.n_ = n;
    g.source_ = source;
    g.k_ = n == 0 ? 0 : n - 1;
    g.implicit_complete_ = true;
    return g;
  }

  /// Builds from explicit lists. Self loops, out-of-range ids and repeated
  /// entries are rejected. List order is preserved.
  static NeighborGraph from_lists(const std::vector<std::vector<std::size_t>>& lists,
                                  GraphSource source, std::size_t k = 0) {
    NeighborGraph g;
    g.n_ = lists.size();
    g.source_ = source;
    g.k_ = k;
    g.offsets_.reserve(g.n_ + 1);
    std::vector<std::size_t> seen(g.n_, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < g.n_; ++i) {
      for (std::size_t j : lists[i]) {
        if (j >= g.n_) {
          throw UsageError("neighbor " + std::to_string(j) + " of node " + std::to_string(i) +
                           " is out of range");
        }
        if (j == i) throw UsageError("node " + std::to_string(i) + " lists itself as neighbor");
        if (seen[j] == i) {
          throw UsageError("node " + std::to_string(i) + " lists neighbor " + std::to_string(j) +
                           " twice");
        }
        seen[j] = i;
        g.targets_.push_back(j);
      }
      g.offsets_.push_back(g.targets_.size());
    }
    return g;
  }

  std::size_t size() const { return n_; }
  GraphSource source() const { return source_; }
  std::size_t k() const { return k_; }
  bool implicit_complete() const { return implicit_complete_; }

  std::size_t degree(std::size_t i) const {
    return implicit_complete_ ? n_ - 1 : offsets_[i + 1] - offsets_[i];
  }

  template <class F>
  void for_each_neighbor(std::size_t i, F&& f) const {
    if (implicit_complete_) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (j != i) f(j);
      }
      return;
    }
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) f(targets_[p]);
  }

  /// Neighbors of i in ascending id order.
  std::vector<std::size_t> neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    out.reserve(degree(i));
    for_each_neighbor(i, [&](std::size_t j) { out.push_back(j); });
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(std::size_t i, std::size_t j) const {
    if (implicit_complete_) return i != j && i < n_ && j < n_;
    return std::find(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                     targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
                     j) != targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
  }

  std::size_t edge_count() const { return implicit_complete_ ? n_ * (n_ - 1) : targets_.size(); }

  bool is_symmetric() const {
    if (implicit_complete_) return true;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
        if (!contains(targets_[p], i)) return false;
      }
    }
    return true;
  }

  /// Symmetric closure: j in N(i) or i in N(j) implies both. Rows sorted.
  NeighborGraph symmetrized() const {
    if (implicit_complete_) return *this;
    std::vector<std::vector<std::size_t>> lists(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
        lists[i].push_back(targets_[p]);
        lists[targets_[p]].push_back(i);
      }
    }
    for (auto& row : lists) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return from_lists(lists, source_, k_);
  }

 private:
  std::size_t n_ = 0;
  GraphSource source_ = GraphSource::complete;
  std::size_t k_ = 0;
  bool implicit_complete_ = false;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> targets_;
};

enum class KnnSearch { automatic, brute_force, kd_tree };

/// Below this size k-NN always scans every pair.
inline constexpr std::size_t knn_index_threshold = 4096;

namespace detail {

inline std::vector<std::size_t> knn_brute_force(const Distances& dist, std::size_t i,
                                                std::size_t k) {
  std::vector<std::pair<double, std::size_t>> candidates;
  candidates.reserve(dist.size() - 1);
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (j != i) candidates.emplace_back(dist(i, j), j);
  }
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                    candidates.end());
  std::vector<std::size_t> out(k);
  for (std::size_t r = 0; r < k; ++r) out[r] = candidates[r].second;
  return out;
}

}  // namespace detail

/// Directed k-nearest-neighbor graph: row i holds i's own K nearest other
/// nodes ordered by (distance, id). Equal distances prefer the lower id,
/// which makes the brute-force scan and the kd-tree agree exactly.
inline NeighborGraph knn_graph(const Distances& dist, std::size_t k, bool symmetrize = false,
                               KnnSearch search = KnnSearch::automatic) {
  const std::size_t n = dist.size();
  if (k < 1 || k + 1 > n) {
    throw UsageError("K must lie in [1, N-1]; got K=" + std::to_string(k) +
                     " with N=" + std::to_string(n));
  }
  if (k == n - 1) return NeighborGraph::complete(n, GraphSource::knn);

  if (search == KnnSearch::automatic) {
    search = (n >= knn_index_threshold && dist.metric() == Metric::euclidean)
                 ? KnnSearch::kd_tree
                 : KnnSearch::brute_force;
  }
  if (search == KnnSearch::kd_tree && dist.metric() != Metric::euclidean) {
    throw UsageError("kd-tree search requires the euclidean metric");
  }

  std::vector<std::vector<std::size_t>> lists(n);
  if (search == KnnSearch::kd_tree) {
    const KdTree tree(dist.dataset());
    for (std::size_t i = 0; i < n; ++i) lists[i] = tree.nearest(i, k, dist);
  } else {
    for (std::size_t i = 0; i < n; ++i) lists[i] = detail::knn_brute_force(dist, i, k);
  }
  auto g = NeighborGraph::from_lists(lists, GraphSource::knn, k);
  return symmetrize ? g.symmetrized() : g;
}

/// Undirected graph from "u v [ignored...]" lines over nodes [0, n).
inline NeighborGraph load_edge_list(std::istream& in, std::size_t n) {
  std::vector<std::vector<std::size_t>> lists(n);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto cells = detail::split_cells(
        body, body.find(',') != std::string_view::npos ? Delimiter::comma : Delimiter::whitespace);
    if (cells.size() < 2) throw ParseError("edge row " + std::to_string(row) + ": need 'u v'");
    std::size_t ends[2];
    for (int e = 0; e < 2; ++e) {
      const auto [ptr, ec] = std::from_chars(cells[e].data(), cells[e].data() + cells[e].size(), ends[e]);
      if (ec != std::errc() || ptr != cells[e].data() + cells[e].size() || ends[e] >= n) {
        throw ParseError("edge row " + std::to_string(row) + ": bad node id '" +
                         std::string(cells[e]) + "'");
      }
    }
    if (ends[0] != ends[1]) {
      lists[ends[0]].push_back(ends[1]);
      lists[ends[1]].push_back(ends[0]);
    }
    ++row;
  }
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return NeighborGraph::from_lists(lists, GraphSource::external);
}

/// One "u v length" line per directed neighbor relation.
inline void write_edge_list(const NeighborGraph& g, const Distances& dist, std::ostream& out) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j : g.neighbors(i)) {
      out << i << ' ' << j << ' ' << detail::format_real(dist(i, j)) << '\n';
    }
  }
}

}  // namespace hnnd
