#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "projmatch/geometry.hpp"
#include "projmatch/silhouette.hpp"

namespace projmatch {

enum class ShapeKind { Square, TwoBars, Helix, FromFile };

std::string shape_name(ShapeKind kind);
ShapeKind parse_shape(const std::string& name);

/// A synthetic scene: a ground-truth cloud plus calibrated cameras.
struct SceneSpec {
  PointCloud3D gt_cloud;
  std::vector<Camera> cameras;
  int image_width = 64;
  int image_height = 64;
  double splat_radius = 1.5;
};

/// Cameras on a circle of the given radius in the xz-plane, all looking
/// at the origin with y up. Square images, principal point at the center.
std::vector<Camera> ring_cameras(int n_views, double radius, double focal, int image_size);

/// Binary silhouette of the cloud under one camera: a pixel is 1.0 when
/// its center lies within splat_radius of any projected point.
Silhouette splat_silhouette(const PointCloud3D& cloud, const Camera& camera, int width, int height,
                            double splat_radius);

struct SceneParams {
  ShapeKind shape = ShapeKind::Square;
  long n_points = 2048;
  int n_views = 5;
  int image_size = 64;
  double camera_radius = 2.0;
  double focal = 0.0;         ///< 0 picks image_size
  double splat_radius = 0.0;  ///< 0 picks 1.5 * image_size / 64
  std::uint64_t seed = 0;
  std::string input_path;  ///< for ShapeKind::FromFile
};

/// Samples one of the reference shapes. FromFile loads an xyz cloud and
/// normalizes it to fit the unit ball.
PointCloud3D make_shape(ShapeKind kind, long n_points, std::uint64_t seed,
                        const std::string& path = "");

SceneSpec make_scene(const SceneParams& params);

std::vector<Silhouette> render_silhouettes(const SceneSpec& spec);

}  // namespace projmatch
