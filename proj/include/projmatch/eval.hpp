#pragma once

#include <cstdint>
#include <vector>

#include "projmatch/geometry.hpp"

namespace projmatch {

struct Box3 {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();
};

/// Symmetric 3D Chamfer distance, squared distances, reported x100:
///   100 * ( mean_a min_b |a-b|^2 + mean_b min_a |a-b|^2 )
/// Throws EmptySet when either cloud is empty.
double chamfer_3d(const PointCloud3D& a, const PointCloud3D& b);

struct VoxelGrid {
  int resolution = 32;
  Box3 bounds;
  /// x-fastest layout: index = (z * R + y) * R + x.
  std::vector<std::uint8_t> occupancy;

  bool occupied(int x, int y, int z) const {
    return occupancy[(static_cast<std::size_t>(z) * resolution + y) * resolution + x] != 0;
  }
};

/// Occupancy grid over the bounds. Points on the upper boundary land in
/// the last cell; points outside the bounds are ignored.
VoxelGrid voxelize(const PointCloud3D& cloud, const Box3& bounds, int resolution = 32);

/// Intersection over union of two grids, reported x100. Grids must share
/// resolution and bounds. Two empty grids count as perfect agreement.
double iou(const VoxelGrid& g1, const VoxelGrid& g2);

/// Joint bounding box of both clouds, each side padded by pad_fraction
/// of the largest extent.
Box3 union_bounds(const PointCloud3D& a, const PointCloud3D& b, double pad_fraction = 0.02);

}  // namespace projmatch
