#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "hnnd/metric.hpp"
#include "hnnd/neighbor_graph.hpp"

namespace hnnd {

struct TreeEdge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  double length = 0.0;

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

/// Spanning tree edges in the order they were added.
struct WeightedTreeEdges {
  std::size_t nodes = 0;
  std::vector<TreeEdge> edges;

  double total_length() const {
    double sum = 0.0;
    for (const auto& e : edges) sum += e.length;
    return sum;
  }
};

/// Minimum spanning tree by dense Prim from node 0, O(N^2) time and O(N)
/// memory. Equal keys pick the lower node id; an equal-length
/// reconnection keeps the lexicographically lower (min, max) id pair.
inline WeightedTreeEdges mst(const Distances& dist) {
  const std::size_t n = dist.size();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  WeightedTreeEdges tree{n, {}};
  if (n < 2) return tree;
  tree.edges.reserve(n - 1);

  const auto pair_of = [](std::size_t a, std::size_t b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
  };

  std::vector<char> in_tree(n, 0);
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> via(n, none);
  std::size_t current = 0;
  in_tree[0] = 1;
  for (std::size_t added = 1; added < n; ++added) {
    std::size_t next = none;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const double d = dist(current, v);
      if (d < key[v] || (d == key[v] && pair_of(current, v) < pair_of(via[v], v))) {
        key[v] = d;
        via[v] = current;
      }
      if (next == none || key[v] < key[next]) next = v;
    }
    in_tree[next] = 1;
    const auto [a, b] = pair_of(via[next], next);
    tree.edges.push_back({a, b, key[next]});
    current = next;
  }
  return tree;
}

/// The tree as a symmetric neighbor graph (usable as a descent constraint).
inline NeighborGraph mst_graph(const WeightedTreeEdges& tree) {
  std::vector<std::vector<std::size_t>> lists(tree.nodes);
  for (const auto& e : tree.edges) {
    lists[e.u].push_back(e.v);
    lists[e.v].push_back(e.u);
  }
  for (auto& row : lists) std::sort(row.begin(), row.end());
  return NeighborGraph::from_lists(lists, GraphSource::mst);
}

}  // namespace hnnd
