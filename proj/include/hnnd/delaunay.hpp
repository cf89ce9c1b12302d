#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "hnnd/dataset.hpp"
#include "hnnd/errors.hpp"
#include "hnnd/neighbor_graph.hpp"
#include "hnnd/predicates.hpp"

namespace hnnd {

namespace detail {

// Bowyer-Watson insertion over a triangulation closed by ghost triangles:
// every hull edge (a, b) carries a ghost (b, a, ghost) whose "circumcircle"
// is the open outer half-plane plus the open edge. Conflicts are strict, so
// a point on a circumcircle never enters the cavity; with co-circular
// points the result is the one fixed by insertion order.
class BowyerWatson {
 public:
  static constexpr std::size_t ghost = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  explicit BowyerWatson(std::vector<geometry::Point2> points) : pts_(std::move(points)) {}

  /// Inserts every point in index order; returns the undirected edge set.
  std::vector<std::pair<std::size_t, std::size_t>> run() {
    const std::size_t n = pts_.size();
    if (n < 3) throw GeometryError("triangulation needs at least three distinct points");
    std::size_t third = none;
    for (std::size_t k = 2; k < n; ++k) {
      if (geometry::orient2d(pts_[0], pts_[1], pts_[k]) != 0) {
        third = k;
        break;
      }
    }
    if (third == none) throw GeometryError("all points are collinear; triangulation undefined");
    seed(0, 1, third);
    for (std::size_t k = 2; k < n; ++k) {
      if (k != third) insert(k);
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& t : tris_) {
      if (!t.alive || t.v[2] == ghost) continue;
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = t.v[(e + 1) % 3], b = t.v[(e + 2) % 3];
        edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
  }

 private:
  struct Triangle {
    std::array<std::size_t, 3> v{};   // ghost, if any, sits in slot 2
    std::array<std::size_t, 3> nbr{};  // nbr[k] is across the edge opposite v[k]
    bool alive = true;
  };

  void seed(std::size_t a, std::size_t b, std::size_t c) {
    if (geometry::orient2d(pts_[a], pts_[b], pts_[c]) < 0) std::swap(a, b);
    std::vector<std::size_t> created;
    created.push_back(add({a, b, c}));
    created.push_back(add({b, a, ghost}));
    created.push_back(add({c, b, ghost}));
    created.push_back(add({a, c, ghost}));
    link(created, {});
    last_solid_ = created.front();
  }

  std::size_t add(std::array<std::size_t, 3> v) {
    tris_.push_back(Triangle{v, {none, none, none}, true});
    return tris_.size() - 1;
  }

  bool conflicts(const Triangle& t, std::size_t p) const {
    if (t.v[2] != ghost) {
      return geometry::incircle(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], pts_[p]) > 0;
    }
    const auto& a = pts_[t.v[0]];
    const auto& b = pts_[t.v[1]];
    const int o = geometry::orient2d(a, b, pts_[p]);
    if (o != 0) return o > 0;
    const auto& q = pts_[p];
    // Collinear: inside the open segment ab?
    const bool between_x = (a.x < q.x && q.x < b.x) || (b.x < q.x && q.x < a.x);
    const bool between_y = (a.y < q.y && q.y < b.y) || (b.y < q.y && q.y < a.y);
    return a.x != b.x ? between_x : between_y;
  }

  // Visibility walk from the last solid triangle towards p.
  std::size_t locate(std::size_t p) const {
    std::size_t t = last_solid_;
    for (std::size_t steps = 0; steps <= 4 * tris_.size(); ++steps) {
      const Triangle& tri = tris_[t];
      if (tri.v[2] == ghost) return t;
      bool moved = false;
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = tri.v[(e + 1) % 3], b = tri.v[(e + 2) % 3];
        if (geometry::orient2d(pts_[a], pts_[b], pts_[p]) < 0) {
          t = tri.nbr[e];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    // Unreachable for a Delaunay triangulation; fall back to a scan.
    for (std::size_t k = 0; k < tris_.size(); ++k) {
      if (tris_[k].alive && conflicts(tris_[k], p)) return k;
    }
    throw GeometryError("point location failed");
  }

  void insert(std::size_t p) {
    const std::size_t start = locate(p);
    std::vector<std::size_t> cavity{start};
    std::vector<char> in_cavity(tris_.size(), 0);
    in_cavity[start] = 1;
    // Boundary edges (a, b) as seen from inside the cavity, plus the
    // triangle outside across them.
    std::vector<std::pair<std::array<std::size_t, 2>, std::size_t>> boundary;
    for (std::size_t q = 0; q < cavity.size(); ++q) {
      const Triangle tri = tris_[cavity[q]];
      for (int e = 0; e < 3; ++e) {
        const std::size_t nb = tri.nbr[e];
        if (in_cavity[nb]) continue;
        if (conflicts(tris_[nb], p)) {
          in_cavity[nb] = 1;
          cavity.push_back(nb);
        }
      }
    }
    for (std::size_t t : cavity) {
      const Triangle& tri = tris_[t];
      for (int e = 0; e < 3; ++e) {
        if (!in_cavity[tri.nbr[e]]) {
          boundary.push_back({{tri.v[(e + 1) % 3], tri.v[(e + 2) % 3]}, tri.nbr[e]});
        }
      }
    }
    for (std::size_t t : cavity) tris_[t].alive = false;

    std::vector<std::size_t> created;
    std::vector<std::size_t> outside;
    for (const auto& [edge, out] : boundary) {
      const auto [a, b] = edge;
      std::array<std::size_t, 3> v{a, b, p};
      if (a == ghost) v = {b, p, ghost};
      if (b == ghost) v = {p, a, ghost};
      created.push_back(add(v));
      outside.push_back(out);
    }
    link(created, outside);
    for (std::size_t t : created) {
      if (tris_[t].v[2] != ghost) last_solid_ = t;
    }
  }

  // Connects the new triangles to each other, and the edge each one shares
  // with the outside triangle `outside[k]` (when given) in both directions.
  void link(const std::vector<std::size_t>& created, const std::vector<std::size_t>& outside) {
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> open;
    for (std::size_t k = 0; k < created.size(); ++k) {
      const std::size_t t = created[k];
      for (int e = 0; e < 3; ++e) {
        const std::size_t a = tris_[t].v[(e + 1) % 3], b = tris_[t].v[(e + 2) % 3];
        if (!outside.empty()) {
          const Triangle& out = tris_[outside[k]];
          int slot = -1;
          for (int f = 0; f < 3; ++f) {
            if (out.v[(f + 1) % 3] == b && out.v[(f + 2) % 3] == a) slot = f;
          }
          if (slot >= 0) {
            tris_[t].nbr[e] = outside[k];
            tris_[outside[k]].nbr[slot] = t;
            continue;
          }
        }
        const auto twin = open.find({b, a});
        if (twin != open.end()) {
          tris_[t].nbr[e] = twin->second.first;
          tris_[twin->second.first].nbr[twin->second.second] = t;
          open.erase(twin);
        } else {
          open[{a, b}] = {t, e};
        }
      }
    }
    if (!open.empty()) throw GeometryError("triangulation update left unmatched edges");
  }

  std::vector<geometry::Point2> pts_;
  std::vector<Triangle> tris_;
  std::size_t last_solid_ = 0;
};

}  // namespace detail

/// Delaunay triangulation edges of 2-D points as a symmetric neighbor graph.
///
/// Coincident points are collapsed to their lowest-index copy before
/// triangulating; every copy then inherits the representative's neighbors
/// and the copies become neighbors of one another.
inline NeighborGraph delaunay_2d(const Dataset& ds) {
  if (ds.kind() != DataKind::numeric || ds.dim() != 2) {
    throw UsageError("Delaunay triangulation needs 2-dimensional numeric data");
  }
  const std::size_t n = ds.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = ds.row(a), rb = ds.row(b);
    if (ra[0] != rb[0]) return ra[0] < rb[0];
    if (ra[1] != rb[1]) return ra[1] < rb[1];
    return a < b;
  });
  std::vector<std::size_t> rep(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    if (k > 0 && ds.row(i)[0] == ds.row(order[k - 1])[0] && ds.row(i)[1] == ds.row(order[k - 1])[1]) {
      rep[i] = rep[order[k - 1]];
    } else {
      rep[i] = i;
    }
  }

  // Distinct points, kept in ascending original index order.
  std::vector<std::size_t> unique_ids;
  std::vector<std::size_t> slot(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rep[i] == i) {
      slot[i] = unique_ids.size();
      unique_ids.push_back(i);
    }
  }
  std::vector<geometry::Point2> pts;
  pts.reserve(unique_ids.size());
  for (std::size_t i : unique_ids) pts.push_back({ds.row(i)[0], ds.row(i)[1]});
  const auto edges = detail::BowyerWatson(std::move(pts)).run();

  std::vector<std::vector<std::size_t>> rep_adj(unique_ids.size());
  for (const auto& [a, b] : edges) {
    rep_adj[a].push_back(unique_ids[b]);
    rep_adj[b].push_back(unique_ids[a]);
  }
  std::vector<std::vector<std::size_t>> copies(n);
  for (std::size_t i = 0; i < n; ++i) copies[rep[i]].push_back(i);

  std::vector<std::vector<std::size_t>> lists(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = lists[i];
    for (std::size_t r : rep_adj[slot[rep[i]]]) {
      row.insert(row.end(), copies[r].begin(), copies[r].end());
    }
    for (std::size_t c : copies[rep[i]]) {
      if (c != i) row.push_back(c);
    }
    std::sort(row.begin(), row.end());
  }
  return NeighborGraph::from_lists(lists, GraphSource::delaunay);
}

}  // namespace hnnd
