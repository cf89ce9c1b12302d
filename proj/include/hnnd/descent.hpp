#pragma once

#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hnnd/errors.hpp"
#include "hnnd/metric.hpp"
#include "hnnd/neighbor_graph.hpp"

namespace hnnd {

enum class ForestStage { nnd_only, merged };

/// Parent pointers of a descent. Roots point to themselves; `roots` lists
/// them in ascending id order.
struct ParentForest {
  std::vector<std::size_t> parent;
  std::vector<std::size_t> roots;
  ForestStage stage = ForestStage::nnd_only;

  std::size_t size() const { return parent.size(); }
  bool is_root(std::size_t i) const { return parent[i] == i; }
  std::size_t edge_count() const { return parent.size() - roots.size(); }
};

/// Strict descent order: j may be a parent of i when j has lower
/// potential, or equal potential and a lower id. This is a total order, so
/// every non-empty node set has exactly one minimum.
inline bool descends_to(std::span<const double> potential, std::size_t i, std::size_t j) {
  return potential[j] < potential[i] || (potential[j] == potential[i] && j < i);
}

/// Candidate parents of every node restricted to its graph neighbors,
/// in ascending id order.
inline std::vector<std::vector<std::size_t>> candidate_sets(const NeighborGraph& graph,
                                                            std::span<const double> potential) {
  std::vector<std::vector<std::size_t>> sets(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    for (std::size_t j : graph.neighbors(i)) {
      if (descends_to(potential, i, j)) sets[i].push_back(j);
    }
  }
  return sets;
}

namespace detail {

inline constexpr std::size_t no_parent = std::numeric_limits<std::size_t>::max();

// Nearest admissible candidate of i; distance ties go to the lower id.
struct NearestCandidate {
  std::size_t best = no_parent;
  double best_distance = 0.0;

  void offer(std::size_t j, double d) {
    if (best == no_parent || d < best_distance || (d == best_distance && j < best)) {
      best = j;
      best_distance = d;
    }
  }
};

inline void check_sizes(std::size_t potential, const Distances& dist) {
  if (potential != dist.size()) {
    throw UsageError("potential has " + std::to_string(potential) + " entries, dataset has " +
                     std::to_string(dist.size()));
  }
}

}  // namespace detail

/// Nearest neighbor descent: every node links to its nearest graph
/// neighbor of lower potential. Nodes without one become roots.
inline ParentForest nnd_pass(const NeighborGraph& graph, std::span<const double> potential,
                             const Distances& dist) {
  detail::check_sizes(potential.size(), dist);
  if (graph.size() != dist.size()) throw UsageError("graph and dataset sizes differ");
  const std::size_t n = dist.size();
  ParentForest forest{std::vector<std::size_t>(n), {}, ForestStage::nnd_only};
  for (std::size_t i = 0; i < n; ++i) {
    detail::NearestCandidate nearest;
    graph.for_each_neighbor(i, [&](std::size_t j) {
      if (descends_to(potential, i, j)) nearest.offer(j, dist(i, j));
    });
    forest.parent[i] = nearest.best == detail::no_parent ? i : nearest.best;
    if (forest.parent[i] == i) forest.roots.push_back(i);
  }
  return forest;
}

/// Nearest descent over `subset` with no locality constraint. Returns the
/// parent of each subset member (aligned with `subset`); the single
/// minimum of the descent order is its own parent.
inline std::vector<std::size_t> nd_pass(std::span<const std::size_t> subset,
                                        std::span<const double> potential,
                                        const Distances& dist) {
  detail::check_sizes(potential.size(), dist);
  if (subset.empty()) throw UsageError("nearest descent needs a non-empty subset");
  std::vector<std::size_t> parents(subset.size());
  for (std::size_t a = 0; a < subset.size(); ++a) {
    const std::size_t i = subset[a];
    detail::NearestCandidate nearest;
    for (std::size_t j : subset) {
      if (descends_to(potential, i, j)) nearest.offer(j, dist(i, j));
    }
    parents[a] = nearest.best == detail::no_parent ? i : nearest.best;
  }
  return parents;
}

/// Links the roots of an NND forest by nearest descent, leaving one root.
inline void merge_roots(ParentForest& forest, std::span<const double> potential,
                        const Distances& dist) {
  const auto parents = nd_pass(forest.roots, potential, dist);
  std::vector<std::size_t> remaining;
  for (std::size_t a = 0; a < parents.size(); ++a) {
    forest.parent[forest.roots[a]] = parents[a];
    if (parents[a] == forest.roots[a]) remaining.push_back(parents[a]);
  }
  forest.roots = std::move(remaining);
  forest.stage = ForestStage::merged;
}

/// Hierarchical nearest neighbor descent: NND within the graph, then ND
/// among the NND roots. Always yields a single in-tree.
inline ParentForest hnnd(const NeighborGraph& graph, std::span<const double> potential,
                         const Distances& dist) {
  auto forest = nnd_pass(graph, potential, dist);
  if (!forest.roots.empty()) merge_roots(forest, potential, dist);
  forest.stage = ForestStage::merged;
  return forest;
}

/// Nearest descent over the whole dataset.
inline ParentForest nd_full(std::span<const double> potential, const Distances& dist) {
  detail::check_sizes(potential.size(), dist);
  const std::size_t n = dist.size();
  ParentForest forest{{}, {}, ForestStage::merged};
  if (n == 0) return forest;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  forest.parent = nd_pass(all, potential, dist);
  for (std::size_t i = 0; i < n; ++i) {
    if (forest.parent[i] == i) forest.roots.push_back(i);
  }
  return forest;
}

/// One "i parent length" line per node (roots list themselves, length 0).
inline void write_parents(const ParentForest& forest, const Distances& dist, std::ostream& out) {
  for (std::size_t i = 0; i < forest.size(); ++i) {
    out << i << ' ' << forest.parent[i] << ' ' << detail::format_real(dist(i, forest.parent[i]))
        << '\n';
  }
}

}  // namespace hnnd
