#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

#include "hnnd/dataset.hpp"
#include "hnnd/metric.hpp"

namespace hnnd {

/// Exact k-nearest-neighbor index over numeric rows (euclidean).
///
/// Leaf distances come from the caller's Distances object, so results are
/// bit-identical to a brute-force scan ordered by (distance, id).
class KdTree {
 public:
  explicit KdTree(const Dataset& ds, std::size_t leaf_size = 16)
      : ds_(&ds), dim_(ds.dim()), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
    order_.resize(ds.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    nodes_.reserve(2 * ds.size() / leaf_size_ + 1);
    build(0, order_.size());
  }

  /// The k nearest rows to row `query`, excluding the row itself.
  std::vector<std::size_t> nearest(std::size_t query, std::size_t k, const Distances& dist) const {
    Search s{query, k, dist, {}};
    visit(0, s);
    std::vector<std::size_t> out(s.heap.size());
    for (std::size_t r = out.size(); r-- > 0;) {
      out[r] = s.heap.top().second;
      s.heap.pop();
    }
    return out;
  }

 private:
  struct Node {
    std::size_t begin = 0, end = 0;
    std::size_t left = 0, right = 0;  // 0 marks a leaf (root is never a child)
    std::vector<double> lo, hi;
  };

  struct Search {
    std::size_t query;
    std::size_t k;
    const Distances& dist;
    std::priority_queue<std::pair<double, std::size_t>> heap;  // worst on top
  };

  std::size_t build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.push_back(Node{begin, end, 0, 0, std::vector<double>(dim_), std::vector<double>(dim_)});
    {
      Node& node = nodes_[id];
      for (std::size_t c = 0; c < dim_; ++c) {
        node.lo[c] = node.hi[c] = ds_->value(order_[begin], c);
      }
      for (std::size_t p = begin + 1; p < end; ++p) {
        for (std::size_t c = 0; c < dim_; ++c) {
          const double v = ds_->value(order_[p], c);
          node.lo[c] = std::min(node.lo[c], v);
          node.hi[c] = std::max(node.hi[c], v);
        }
      }
    }
    if (end - begin <= leaf_size_) return id;

    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      const double w = nodes_[id].hi[c] - nodes_[id].lo[c];
      if (w > widest) widest = w, axis = c;
    }
    if (widest <= 0.0) return id;  // all rows identical

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                       const double va = ds_->value(a, axis), vb = ds_->value(b, axis);
                       return va < vb || (va == vb && a < b);
                     });
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  double box_distance(const Node& node, std::size_t query) const {
    double sum = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      const double v = ds_->value(query, c);
      double gap = 0.0;
      if (v < node.lo[c]) gap = node.lo[c] - v;
      else if (v > node.hi[c]) gap = v - node.hi[c];
      sum += gap * gap;
    }
    return std::sqrt(sum);
  }

  bool prunable(double bound, const Search& s) const {
    if (s.heap.size() < s.k) return false;
    // Equal distances still matter (id tie-break), and the bound carries
    // rounding error, so only prune with a relative margin.
    return bound * (1.0 - 1e-12) > s.heap.top().first;
  }

  void visit(std::size_t id, Search& s) const {
    const Node& node = nodes_[id];
    if (prunable(box_distance(node, s.query), s)) return;
    if (node.left == 0) {
      for (std::size_t p = node.begin; p < node.end; ++p) {
        const std::size_t j = order_[p];
        if (j == s.query) continue;
        const std::pair<double, std::size_t> cand{s.dist(s.query, j), j};
        if (s.heap.size() < s.k) {
          s.heap.push(cand);
        } else if (cand < s.heap.top()) {
          s.heap.pop();
          s.heap.push(cand);
        }
      }
      return;
    }
    const double dl = box_distance(nodes_[node.left], s.query);
    const double dr = box_distance(nodes_[node.right], s.query);
    if (dl <= dr) {
      visit(node.left, s);
      visit(node.right, s);
    } else {
      visit(node.right, s);
      visit(node.left, s);
    }
  }

  const Dataset* ds_;
  std::size_t dim_;
  std::size_t leaf_size_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace hnnd
