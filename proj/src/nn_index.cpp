#include "projmatch/nn_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace projmatch {

namespace {

/// Squared distance from q to the axis-aligned rectangle [lx,hx]x[ly,hy].
inline double rect_dist2(const Vec2& q, double lx, double hx, double ly, double hy) {
  const double dx = std::max({lx - q.x(), 0.0, q.x() - hx});
  const double dy = std::max({ly - q.y(), 0.0, q.y() - hy});
  return dx * dx + dy * dy;
}

}  // namespace

void Index2D::assign(const PointSet2D& pts) {
  const long n = pts.size();
  if (n == 0) throw EmptySet("cannot index an empty point set");
  pts_ = pts.points;

  double min_x = pts_[0].x(), max_x = min_x;
  double min_y = pts_[0].y(), max_y = min_y;
  for (const Vec2& p : pts_) {
    min_x = std::min(min_x, p.x());
    max_x = std::max(max_x, p.x());
    min_y = std::min(min_y, p.y());
    max_y = std::max(max_y, p.y());
  }
  const double dx = max_x - min_x;
  const double dy = max_y - min_y;
  cell_ = std::sqrt(dx * dx + dy * dy) / std::sqrt(static_cast<double>(n));
  if (!(cell_ > 0.0)) cell_ = 1.0;  // all points coincide
  min_x_ = min_x;
  min_y_ = min_y;
  nx_ = static_cast<int>(dx / cell_) + 1;
  ny_ = static_cast<int>(dy / cell_) + 1;

  const int ncells = nx_ * ny_;
  cell_of_.resize(n);
  starts_.assign(ncells + 1, 0);
  for (long i = 0; i < n; ++i) {
    const int c = cell_y(pts_[i].y()) * nx_ + cell_x(pts_[i].x());
    cell_of_[i] = c;
    ++starts_[c + 1];
  }
  for (int c = 0; c < ncells; ++c) starts_[c + 1] += starts_[c];
  ids_.resize(n);
  cursor_.assign(starts_.begin(), starts_.end() - 1);
  for (long i = 0; i < n; ++i) ids_[cursor_[cell_of_[i]]++] = static_cast<int>(i);
}

int Index2D::cell_x(double x) const {
  return std::clamp(static_cast<int>((x - min_x_) / cell_), 0, nx_ - 1);
}

int Index2D::cell_y(double y) const {
  return std::clamp(static_cast<int>((y - min_y_) / cell_), 0, ny_ - 1);
}

double Index2D::unvisited_dist2(const Vec2& q, int cx, int cy, int r) const {
  const int x_lo = std::max(0, cx - r);
  const int x_hi = std::min(nx_ - 1, cx + r);
  const int y_lo = std::max(0, cy - r);
  const int y_hi = std::min(ny_ - 1, cy + r);
  const bool left = x_lo > 0;
  const bool right = x_hi < nx_ - 1;
  const bool below = y_lo > 0;
  const bool above = y_hi < ny_ - 1;
  if (!left && !right && !below && !above) return -1.0;
  const double gx0 = min_x_;
  const double gx1 = min_x_ + nx_ * cell_;
  const double gy0 = min_y_;
  const double gy1 = min_y_ + ny_ * cell_;
  double bound = std::numeric_limits<double>::infinity();
  if (left) bound = std::min(bound, rect_dist2(q, gx0, min_x_ + x_lo * cell_, gy0, gy1));
  if (right) bound = std::min(bound, rect_dist2(q, min_x_ + (x_hi + 1) * cell_, gx1, gy0, gy1));
  if (below) bound = std::min(bound, rect_dist2(q, gx0, gx1, gy0, min_y_ + y_lo * cell_));
  if (above) bound = std::min(bound, rect_dist2(q, gx0, gx1, min_y_ + (y_hi + 1) * cell_, gy1));
  return bound;
}

Neighbor Index2D::nearest(const Vec2& q) const {
  const int cx = cell_x(q.x());
  const int cy = cell_y(q.y());
  Neighbor best{-1, std::numeric_limits<double>::infinity()};

  const auto scan_cell = [&](int gx, int gy) {
    const int c = gy * nx_ + gx;
    for (int t = starts_[c]; t < starts_[c + 1]; ++t) {
      const int id = ids_[t];
      const double d2 = (pts_[id] - q).squaredNorm();
      if (d2 < best.dist2 || (d2 == best.dist2 && id < best.index)) best = {id, d2};
    }
  };

  for (int r = 0;; ++r) {
    const int x_lo = std::max(0, cx - r);
    const int x_hi = std::min(nx_ - 1, cx + r);
    if (cy - r >= 0) {
      for (int gx = x_lo; gx <= x_hi; ++gx) scan_cell(gx, cy - r);
    }
    if (r > 0 && cy + r <= ny_ - 1) {
      for (int gx = x_lo; gx <= x_hi; ++gx) scan_cell(gx, cy + r);
    }
    if (r > 0) {
      const int y_lo = std::max(0, cy - r + 1);
      const int y_hi = std::min(ny_ - 1, cy + r - 1);
      if (cx - r >= 0) {
        for (int gy = y_lo; gy <= y_hi; ++gy) scan_cell(cx - r, gy);
      }
      if (cx + r <= nx_ - 1) {
        for (int gy = y_lo; gy <= y_hi; ++gy) scan_cell(cx + r, gy);
      }
    }
    const double bound = unvisited_dist2(q, cx, cy, r);
    if (bound < 0.0) break;
    if (best.index >= 0 && bound > best.dist2) break;
  }
  return best;
}

void Index2D::knn(const Vec2& q, int k, std::vector<Neighbor>& out) const {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k > size()) throw KTooLarge(k, size());
  out.clear();

  // out stays ascending by (dist2, index)
  const auto consider = [&](int id, double d2) {
    if (out.size() == static_cast<size_t>(k)) {
      const Neighbor& worst = out.back();
      if (!(d2 < worst.dist2 || (d2 == worst.dist2 && id < worst.index))) return;
      out.pop_back();
    }
    size_t pos = out.size();
    while (pos > 0 &&
           (d2 < out[pos - 1].dist2 || (d2 == out[pos - 1].dist2 && id < out[pos - 1].index))) {
      --pos;
    }
    out.insert(out.begin() + pos, Neighbor{id, d2});
  };

  const int cx = cell_x(q.x());
  const int cy = cell_y(q.y());
  const auto scan_cell = [&](int gx, int gy) {
    const int c = gy * nx_ + gx;
    for (int t = starts_[c]; t < starts_[c + 1]; ++t) {
      const int id = ids_[t];
      consider(id, (pts_[id] - q).squaredNorm());
    }
  };

  for (int r = 0;; ++r) {
    const int x_lo = std::max(0, cx - r);
    const int x_hi = std::min(nx_ - 1, cx + r);
    if (cy - r >= 0) {
      for (int gx = x_lo; gx <= x_hi; ++gx) scan_cell(gx, cy - r);
    }
    if (r > 0 && cy + r <= ny_ - 1) {
      for (int gx = x_lo; gx <= x_hi; ++gx) scan_cell(gx, cy + r);
    }
    if (r > 0) {
      const int y_lo = std::max(0, cy - r + 1);
      const int y_hi = std::min(ny_ - 1, cy + r - 1);
      if (cx - r >= 0) {
        for (int gy = y_lo; gy <= y_hi; ++gy) scan_cell(cx - r, gy);
      }
      if (cx + r <= nx_ - 1) {
        for (int gy = y_lo; gy <= y_hi; ++gy) scan_cell(cx + r, gy);
      }
    }
    const double bound = unvisited_dist2(q, cx, cy, r);
    if (bound < 0.0) break;
    if (out.size() == static_cast<size_t>(k) && bound > out.back().dist2) break;
  }
}

std::vector<Neighbor> Index2D::knn(const Vec2& q, int k) const {
  std::vector<Neighbor> out;
  knn(q, k, out);
  return out;
}

}  // namespace projmatch
