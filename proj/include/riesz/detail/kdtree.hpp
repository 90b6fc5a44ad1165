#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace riesz::detail {

// Minimal kd-tree over an externally owned row-major coordinate array.
// Supports nearest-neighbor queries that exclude the query point itself,
// which is all the spacing computation needs.
class KdTree {
 public:
  KdTree(const double* coords, std::size_t count, int dim, int leaf_size = 16)
      : coords_(coords), dim_(dim), leaf_size_(leaf_size) {
    index_.resize(count);
    std::iota(index_.begin(), index_.end(), std::size_t{0});
    nodes_.reserve(count / static_cast<std::size_t>(leaf_size) * 2 + 4);
    if (count > 0) root_ = build(0, count);
  }

  // Squared distance to the nearest point with index != self.
  double nearest_sq(std::size_t self) const {
    double best = std::numeric_limits<double>::infinity();
    search(root_, point(self), self, best);
    return best;
  }

 private:
  struct Node {
    int axis = -1;        // -1 marks a leaf
    double split = 0.0;
    std::size_t begin = 0, end = 0;  // leaf range into index_
    int left = -1, right = -1;
  };

  const double* point(std::size_t i) const { return coords_ + i * static_cast<std::size_t>(dim_); }

  double dist_sq(const double* a, const double* b) const {
    double s = 0.0;
    for (int k = 0; k < dim_; ++k) {
      const double t = a[k] - b[k];
      s += t * t;
    }
    return s;
  }

  int build(std::size_t begin, std::size_t end) {
    Node node;
    if (end - begin <= static_cast<std::size_t>(leaf_size_)) {
      node.begin = begin;
      node.end = end;
      nodes_.push_back(node);
      return static_cast<int>(nodes_.size()) - 1;
    }
    // Split on the axis with the widest spread.
    int axis = 0;
    double best_spread = -1.0;
    for (int k = 0; k < dim_; ++k) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t i = begin; i < end; ++i) {
        const double v = point(index_[i])[k];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi - lo > best_spread) {
        best_spread = hi - lo;
        axis = k;
      }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(index_.begin() + static_cast<std::ptrdiff_t>(begin),
                     index_.begin() + static_cast<std::ptrdiff_t>(mid),
                     index_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                       const double va = point(a)[axis], vb = point(b)[axis];
                       return va < vb || (va == vb && a < b);
                     });
    node.axis = axis;
    node.split = point(index_[mid])[axis];
    const int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
  }

  void search(int node_id, const double* q, std::size_t self, double& best) const {
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.axis < 0) {
      for (std::size_t i = node.begin; i < node.end; ++i) {
        const std::size_t j = index_[i];
        if (j == self) continue;
        best = std::min(best, dist_sq(q, point(j)));
      }
      return;
    }
    const double delta = q[node.axis] - node.split;
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    search(near, q, self, best);
    if (delta * delta < best) search(far, q, self, best);
  }

  const double* coords_;
  int dim_;
  int leaf_size_;
  std::vector<std::size_t> index_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace riesz::detail
