#pragma once

#include <Eigen/Dense>
#include <vector>

#include "projmatch/errors.hpp"

namespace projmatch {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat34 = Eigen::Matrix<double, 3, 4>;
using Mat23 = Eigen::Matrix<double, 2, 3>;

/// Smallest admissible homogeneous depth. Guards the perspective division
/// without perturbing any realistic depth.
inline constexpr double kDepthEpsilon = 1e-8;

/// Ordered set of 3D points in object-centered world coordinates.
/// Index j identifies the same logical point across iterations.
struct PointCloud3D {
  std::vector<Vec3> points;

  long size() const { return static_cast<long>(points.size()); }
};

/// Irregular set of 2D points in continuous pixel coordinates: origin at
/// the top-left image corner, x rightward, y downward, one unit = one
/// pixel. Points may lie outside the image; projections are not clipped.
struct PointSet2D {
  std::vector<Vec2> points;

  long size() const { return static_cast<long>(points.size()); }
};

/// Pinhole camera as the fused 3x4 intrinsics-times-extrinsics matrix.
struct Camera {
  Mat34 matrix = Mat34::Zero();
  int view_id = 0;

  /// Builds the fused matrix from focal length (pixels), principal point,
  /// a world-to-camera rotation and translation. The camera frame is
  /// x right, y down, z forward (depth).
  static Camera from_parts(double focal, const Vec2& principal, const Mat3& rotation,
                           const Vec3& translation, int view_id = 0);

  /// True when all entries are finite and the left 3x3 block is nonsingular.
  bool valid() const;
};

/// Perspective projection of a single point. Throws DepthError when the
/// homogeneous depth is <= kDepthEpsilon.
Vec2 project_point(const Vec3& p, const Camera& cam, long point_index = -1);

/// Projects every point of the cloud, preserving order.
PointSet2D project(const PointCloud3D& cloud, const Camera& cam);

/// Derivative of the projected pixel position with respect to the 3D
/// point: with a = row1.[p 1], b = row2.[p 1], w = row3.[p 1] the result
/// is [(w r1 - a r3) / w^2 ; (w r2 - b r3) / w^2], r* being the 3x3 row
/// parts. Same depth precondition as project_point.
Mat23 project_jacobian(const Vec3& p, const Camera& cam);

}  // namespace projmatch
