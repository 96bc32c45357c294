#include "projmatch/geometry.hpp"

namespace projmatch {

Camera Camera::from_parts(double focal, const Vec2& principal, const Mat3& rotation,
                          const Vec3& translation, int view_id) {
  Mat3 intrinsics;
  intrinsics << focal, 0, principal.x(), 0, focal, principal.y(), 0, 0, 1;
  Camera cam;
  cam.matrix.leftCols<3>() = intrinsics * rotation;
  cam.matrix.col(3) = intrinsics * translation;
  cam.view_id = view_id;
  return cam;
}

bool Camera::valid() const {
  if (!matrix.allFinite()) return false;
  return matrix.leftCols<3>().determinant() != 0.0;
}

Vec2 project_point(const Vec3& p, const Camera& cam, long point_index) {
  const double w = cam.matrix.row(2).head<3>().dot(p) + cam.matrix(2, 3);
  if (w <= kDepthEpsilon) throw DepthError(cam.view_id, point_index, w);
  const double a = cam.matrix.row(0).head<3>().dot(p) + cam.matrix(0, 3);
  const double b = cam.matrix.row(1).head<3>().dot(p) + cam.matrix(1, 3);
  return {a / w, b / w};
}

PointSet2D project(const PointCloud3D& cloud, const Camera& cam) {
  PointSet2D out;
  out.points.reserve(cloud.points.size());
  for (long j = 0; j < cloud.size(); ++j) {
    out.points.push_back(project_point(cloud.points[j], cam, j));
  }
  return out;
}

Mat23 project_jacobian(const Vec3& p, const Camera& cam) {
  const Eigen::RowVector3d r1 = cam.matrix.row(0).head<3>();
  const Eigen::RowVector3d r2 = cam.matrix.row(1).head<3>();
  const Eigen::RowVector3d r3 = cam.matrix.row(2).head<3>();
  const double w = r3.dot(p) + cam.matrix(2, 3);
  if (w <= kDepthEpsilon) throw DepthError(cam.view_id, -1, w);
  const double a = r1.dot(p) + cam.matrix(0, 3);
  const double b = r2.dot(p) + cam.matrix(1, 3);
  const double inv_w2 = 1.0 / (w * w);
  Mat23 jac;
  jac.row(0) = (w * r1 - a * r3) * inv_w2;
  jac.row(1) = (w * r2 - b * r3) * inv_w2;
  return jac;
}

}  // namespace projmatch
