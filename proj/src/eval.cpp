#include "projmatch/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "projmatch/errors.hpp"

namespace projmatch {

namespace {

/// Uniform-grid 1-NN accelerator over a 3D cloud; distance values only,
/// so stopping on an exact tie is fine.
class Grid3 {
public:
  explicit Grid3(const std::vector<Vec3>& pts) : pts_(pts) {
    lo_ = hi_ = pts_[0];
    for (const Vec3& p : pts_) {
      lo_ = lo_.cwiseMin(p);
      hi_ = hi_.cwiseMax(p);
    }
    const long n = static_cast<long>(pts_.size());
    cell_ = (hi_ - lo_).norm() / std::cbrt(static_cast<double>(n));
    if (!(cell_ > 0.0)) cell_ = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
      dims_[axis] = static_cast<int>((hi_[axis] - lo_[axis]) / cell_) + 1;
    }
    const long ncells = static_cast<long>(dims_[0]) * dims_[1] * dims_[2];
    starts_.assign(ncells + 1, 0);
    std::vector<int> cell_of(n);
    for (long i = 0; i < n; ++i) {
      cell_of[i] = flat_cell(pts_[i]);
      ++starts_[cell_of[i] + 1];
    }
    for (long c = 0; c < ncells; ++c) starts_[c + 1] += starts_[c];
    ids_.resize(n);
    std::vector<int> cursor(starts_.begin(), starts_.end() - 1);
    for (long i = 0; i < n; ++i) ids_[cursor[cell_of[i]]++] = static_cast<int>(i);
  }

  double nearest_dist2(const Vec3& q) const {
    int c[3];
    for (int axis = 0; axis < 3; ++axis) {
      c[axis] = std::clamp(static_cast<int>((q[axis] - lo_[axis]) / cell_), 0, dims_[axis] - 1);
    }
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0;; ++r) {
      scan_shell(q, c, r, best);
      const double bound = unvisited_dist2(q, c, r);
      if (bound < 0.0) break;
      if (best < std::numeric_limits<double>::infinity() && bound >= best) break;
    }
    return best;
  }

private:
  int flat_cell(const Vec3& p) const {
    int c[3];
    for (int axis = 0; axis < 3; ++axis) {
      c[axis] = std::clamp(static_cast<int>((p[axis] - lo_[axis]) / cell_), 0, dims_[axis] - 1);
    }
    return (c[2] * dims_[1] + c[1]) * dims_[0] + c[0];
  }

  void scan_shell(const Vec3& q, const int c[3], int r, double& best) const {
    const int x_lo = std::max(0, c[0] - r), x_hi = std::min(dims_[0] - 1, c[0] + r);
    const int y_lo = std::max(0, c[1] - r), y_hi = std::min(dims_[1] - 1, c[1] + r);
    const int z_lo = std::max(0, c[2] - r), z_hi = std::min(dims_[2] - 1, c[2] + r);
    for (int z = z_lo; z <= z_hi; ++z) {
      const bool z_face = z == c[2] - r || z == c[2] + r;
      for (int y = y_lo; y <= y_hi; ++y) {
        const bool y_face = y == c[1] - r || y == c[1] + r;
        for (int x = x_lo; x <= x_hi; ++x) {
          if (!z_face && !y_face && x != c[0] - r && x != c[0] + r) continue;
          const long cell = (static_cast<long>(z) * dims_[1] + y) * dims_[0] + x;
          for (int t = starts_[cell]; t < starts_[cell + 1]; ++t) {
            best = std::min(best, (pts_[ids_[t]] - q).squaredNorm());
          }
        }
      }
    }
  }

  double unvisited_dist2(const Vec3& q, const int c[3], int r) const {
    // Lower-bounds the distance to each grid slab beyond the visited
    // Chebyshev box by its axis component alone; an underestimate only
    // delays the stop, never breaks exactness.
    double bound = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int axis = 0; axis < 3; ++axis) {
      if (c[axis] - r > 0) {
        any = true;
        const double edge = lo_[axis] + (c[axis] - r) * cell_;
        const double d = std::max(0.0, q[axis] - edge);
        bound = std::min(bound, d * d);
      }
      if (c[axis] + r < dims_[axis] - 1) {
        any = true;
        const double edge = lo_[axis] + (c[axis] + r + 1) * cell_;
        const double d = std::max(0.0, edge - q[axis]);
        bound = std::min(bound, d * d);
      }
    }
    return any ? bound : -1.0;
  }

  const std::vector<Vec3>& pts_;
  Vec3 lo_, hi_;
  double cell_ = 1.0;
  int dims_[3] = {1, 1, 1};
  std::vector<int> starts_;
  std::vector<int> ids_;
};

double mean_min_dist2(const std::vector<Vec3>& from, const Grid3& to_index) {
  double sum = 0.0;
  for (const Vec3& p : from) sum += to_index.nearest_dist2(p);
  return sum / static_cast<double>(from.size());
}

}  // namespace

double chamfer_3d(const PointCloud3D& a, const PointCloud3D& b) {
  if (a.size() == 0 || b.size() == 0) throw EmptySet("chamfer_3d needs nonempty clouds");
  const Grid3 index_a(a.points);
  const Grid3 index_b(b.points);
  return 100.0 * (mean_min_dist2(a.points, index_b) + mean_min_dist2(b.points, index_a));
}

VoxelGrid voxelize(const PointCloud3D& cloud, const Box3& bounds, int resolution) {
  VoxelGrid grid;
  grid.resolution = resolution;
  grid.bounds = bounds;
  grid.occupancy.assign(static_cast<size_t>(resolution) * resolution * resolution, 0);
  const Vec3 extent = bounds.hi - bounds.lo;
  for (const Vec3& p : cloud.points) {
    bool inside = true;
    int idx[3];
    for (int axis = 0; axis < 3; ++axis) {
      if (p[axis] < bounds.lo[axis] || p[axis] > bounds.hi[axis]) {
        inside = false;
        break;
      }
      const double step = extent[axis] / resolution;
      idx[axis] = step > 0.0
                      ? std::min(static_cast<int>((p[axis] - bounds.lo[axis]) / step), resolution - 1)
                      : 0;
    }
    if (inside) {
      grid.occupancy[(static_cast<size_t>(idx[2]) * resolution + idx[1]) * resolution + idx[0]] = 1;
    }
  }
  return grid;
}

double iou(const VoxelGrid& g1, const VoxelGrid& g2) {
  if (g1.resolution != g2.resolution || g1.occupancy.size() != g2.occupancy.size()) {
    throw ShapeMismatch("voxel grids differ in resolution");
  }
  if (g1.bounds.lo != g2.bounds.lo || g1.bounds.hi != g2.bounds.hi) {
    throw ShapeMismatch("voxel grids differ in bounds");
  }
  long inter = 0;
  long uni = 0;
  for (size_t i = 0; i < g1.occupancy.size(); ++i) {
    const bool a = g1.occupancy[i] != 0;
    const bool b = g2.occupancy[i] != 0;
    inter += a && b;
    uni += a || b;
  }
  if (uni == 0) return 100.0;
  return 100.0 * static_cast<double>(inter) / static_cast<double>(uni);
}

Box3 union_bounds(const PointCloud3D& a, const PointCloud3D& b, double pad_fraction) {
  if (a.size() == 0 || b.size() == 0) throw EmptySet("union_bounds needs nonempty clouds");
  Box3 box;
  box.lo = a.points[0];
  box.hi = a.points[0];
  for (const Vec3& p : a.points) {
    box.lo = box.lo.cwiseMin(p);
    box.hi = box.hi.cwiseMax(p);
  }
  for (const Vec3& p : b.points) {
    box.lo = box.lo.cwiseMin(p);
    box.hi = box.hi.cwiseMax(p);
  }
  const double pad = pad_fraction * (box.hi - box.lo).maxCoeff();
  box.lo.array() -= pad;
  box.hi.array() += pad;
  return box;
}

}  // namespace projmatch
