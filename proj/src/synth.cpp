#include "projmatch/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "projmatch/io.hpp"
#include "projmatch/rng.hpp"

namespace projmatch {

std::string shape_name(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Square: return "square";
    case ShapeKind::TwoBars: return "twobars";
    case ShapeKind::Helix: return "helix";
    case ShapeKind::FromFile: return "fromfile";
  }
  return "unknown";
}

ShapeKind parse_shape(const std::string& name) {
  if (name == "square") return ShapeKind::Square;
  if (name == "twobars") return ShapeKind::TwoBars;
  if (name == "helix") return ShapeKind::Helix;
  if (name == "fromfile") return ShapeKind::FromFile;
  throw std::invalid_argument("unknown shape: " + name);
}

std::vector<Camera> ring_cameras(int n_views, double radius, double focal, int image_size) {
  if (n_views < 1) throw std::invalid_argument("need at least one view");
  if (!(radius > 0.0)) throw std::invalid_argument("camera radius must be > 0");
  std::vector<Camera> cams;
  cams.reserve(n_views);
  const Vec2 principal{image_size / 2.0, image_size / 2.0};
  const Vec3 up{0.0, 1.0, 0.0};
  for (int i = 0; i < n_views; ++i) {
    const double theta = 2.0 * M_PI * i / n_views;
    const Vec3 center{radius * std::cos(theta), 0.0, radius * std::sin(theta)};
    const Vec3 z = (-center).normalized();
    const Vec3 x = z.cross(up).normalized();
    const Vec3 y = z.cross(x);  // image y runs downward
    Mat3 rotation;
    rotation.row(0) = x;
    rotation.row(1) = y;
    rotation.row(2) = z;
    const Vec3 translation = -rotation * center;
    cams.push_back(Camera::from_parts(focal, principal, rotation, translation, i));
  }
  return cams;
}

Silhouette splat_silhouette(const PointCloud3D& cloud, const Camera& camera, int width, int height,
                            double splat_radius) {
  Silhouette s = Silhouette::filled(width, height, 0.0);
  const double r2 = splat_radius * splat_radius;
  for (long j = 0; j < cloud.size(); ++j) {
    const Vec2 q = project_point(cloud.points[j], camera, j);
    const int x_lo = std::max(0, static_cast<int>(std::ceil(q.x() - 0.5 - splat_radius)));
    const int x_hi = std::min(width - 1, static_cast<int>(std::floor(q.x() - 0.5 + splat_radius)));
    const int y_lo = std::max(0, static_cast<int>(std::ceil(q.y() - 0.5 - splat_radius)));
    const int y_hi = std::min(height - 1, static_cast<int>(std::floor(q.y() - 0.5 + splat_radius)));
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        const double dx = x + 0.5 - q.x();
        const double dy = y + 0.5 - q.y();
        if (dx * dx + dy * dy <= r2) s.at(x, y) = 1.0;
      }
    }
  }
  return s;
}

namespace {

PointCloud3D make_square(long n_points, Rng& rng) {
  PointCloud3D cloud;
  cloud.points.reserve(n_points);
  for (long j = 0; j < n_points; ++j) {
    cloud.points.push_back({rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4), 0.0});
  }
  return cloud;
}

PointCloud3D make_two_bars(long n_points, Rng& rng) {
  // Perpendicular thin bars of square cross-section 0.05, along x and y.
  constexpr double kHalf = 0.025;
  PointCloud3D cloud;
  cloud.points.reserve(n_points);
  for (long j = 0; j < n_points; ++j) {
    const double along = rng.uniform(-0.5, 0.5);
    const double u = rng.uniform(-kHalf, kHalf);
    const double v = rng.uniform(-kHalf, kHalf);
    if (j % 2 == 0) {
      cloud.points.push_back({along, u, v});
    } else {
      cloud.points.push_back({u, along, v});
    }
  }
  return cloud;
}

PointCloud3D make_helix(long n_points, Rng& rng) {
  constexpr double kRadius = 0.35;
  constexpr double kTurns = 2.5;
  constexpr double kThickness = 0.03;
  PointCloud3D cloud;
  cloud.points.reserve(n_points);
  while (cloud.size() < n_points) {
    const double t = rng.uniform01();
    const double angle = 2.0 * M_PI * kTurns * t;
    const Vec3 center{kRadius * std::cos(angle), -0.4 + 0.8 * t, kRadius * std::sin(angle)};
    const Vec3 offset{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (offset.squaredNorm() > 1.0) continue;
    cloud.points.push_back(center + kThickness * offset);
  }
  return cloud;
}

PointCloud3D load_normalized(const std::string& path) {
  PointCloud3D cloud = read_xyz_file(path);
  Vec3 lo = cloud.points[0];
  Vec3 hi = cloud.points[0];
  for (const Vec3& p : cloud.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec3 center = 0.5 * (lo + hi);
  double max_norm = 0.0;
  for (Vec3& p : cloud.points) {
    p -= center;
    max_norm = std::max(max_norm, p.norm());
  }
  if (max_norm > 1.0) {
    for (Vec3& p : cloud.points) p /= max_norm;
  }
  return cloud;
}

}  // namespace

PointCloud3D make_shape(ShapeKind kind, long n_points, std::uint64_t seed,
                        const std::string& path) {
  if (kind == ShapeKind::FromFile) return load_normalized(path);
  if (n_points < 1) throw std::invalid_argument("need at least one point");
  Rng rng(mix_seed(seed, 7));
  switch (kind) {
    case ShapeKind::Square: return make_square(n_points, rng);
    case ShapeKind::TwoBars: return make_two_bars(n_points, rng);
    case ShapeKind::Helix: return make_helix(n_points, rng);
    case ShapeKind::FromFile: break;
  }
  throw std::runtime_error("unreachable shape dispatch");
}

SceneSpec make_scene(const SceneParams& params) {
  SceneSpec spec;
  spec.gt_cloud = make_shape(params.shape, params.n_points, params.seed, params.input_path);
  const double focal = params.focal > 0.0 ? params.focal : params.image_size;
  spec.cameras = ring_cameras(params.n_views, params.camera_radius, focal, params.image_size);
  spec.image_width = params.image_size;
  spec.image_height = params.image_size;
  spec.splat_radius =
      params.splat_radius > 0.0 ? params.splat_radius : 1.5 * params.image_size / 64.0;
  return spec;
}

std::vector<Silhouette> render_silhouettes(const SceneSpec& spec) {
  std::vector<Silhouette> out;
  out.reserve(spec.cameras.size());
  for (const Camera& cam : spec.cameras) {
    out.push_back(splat_silhouette(spec.gt_cloud, cam, spec.image_width, spec.image_height,
                                   spec.splat_radius));
  }
  return out;
}

}  // namespace projmatch
