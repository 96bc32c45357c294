#pragma once

#include <vector>

#include "projmatch/geometry.hpp"

namespace projmatch {

struct Neighbor {
  int index = -1;
  double dist2 = 0.0;
};

/// Exact 2D nearest-neighbor index over a uniform grid of buckets (cell
/// size = bounding-box diagonal / sqrt(n)). Queries ring-expand outward
/// from the query cell and are identical to brute force, with ties broken
/// by the smaller point index. Immutable between assign() calls;
/// concurrent queries are safe.
class Index2D {
public:
  Index2D() = default;
  explicit Index2D(const PointSet2D& pts) { assign(pts); }

  /// (Re)builds the index, reusing internal storage. Throws EmptySet on
  /// an empty input.
  void assign(const PointSet2D& pts);

  long size() const { return static_cast<long>(pts_.size()); }
  const std::vector<Vec2>& points() const { return pts_; }

  /// Single nearest neighbor; squared Euclidean distance.
  Neighbor nearest(const Vec2& q) const;

  /// The k nearest neighbors in ascending (distance, index) order.
  /// Throws KTooLarge when k exceeds the indexed count.
  void knn(const Vec2& q, int k, std::vector<Neighbor>& out) const;
  std::vector<Neighbor> knn(const Vec2& q, int k) const;

private:
  int cell_x(double x) const;
  int cell_y(double y) const;
  // Squared distance from q to the unvisited part of the grid after the
  // ring at Chebyshev radius r; negative when everything was visited.
  double unvisited_dist2(const Vec2& q, int cx, int cy, int r) const;

  std::vector<Vec2> pts_;
  std::vector<int> cell_of_;    // flattened cell per point
  std::vector<int> starts_;     // CSR offsets, nx_*ny_ + 1
  std::vector<int> ids_;        // point indices grouped by cell, ascending in each
  std::vector<int> cursor_;     // counting-sort scratch
  double min_x_ = 0, min_y_ = 0, cell_ = 1;
  int nx_ = 1, ny_ = 1;
};

}  // namespace projmatch
