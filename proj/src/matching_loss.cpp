#include "projmatch/matching_loss.hpp"

namespace projmatch {

namespace {

void chamfer_terms(const PointSet2D& proj, const Index2D* proj_index, const PointSet2D& sup,
                   const Index2D* sup_index, const LossConfig& cfg, Chamfer2DResult& out) {
  const long j_count = proj.size();
  const long k_count = sup.size();
  if (j_count == 0) throw EmptySet("projection set is empty");
  if (k_count == 0) throw EmptySet("supervision set is empty");
  if (cfg.use_first && cfg.nn_first > k_count) throw KTooLarge(cfg.nn_first, k_count);
  if (cfg.use_second && cfg.nn_second > j_count) throw KTooLarge(cfg.nn_second, j_count);

  out.value = 0.0;
  out.dvalue_dproj.assign(j_count, Vec2::Zero());

  std::vector<Neighbor> nbrs;
  if (cfg.use_first) {
    const double inv = 1.0 / (static_cast<double>(j_count) * cfg.nn_first);
    const double grad_scale = 2.0 * inv;
    double sum = 0.0;
    if (cfg.nn_first == 1) {
      for (long j = 0; j < j_count; ++j) {
        const Neighbor nb = sup_index->nearest(proj.points[j]);
        sum += nb.dist2;
        out.dvalue_dproj[j] += grad_scale * (proj.points[j] - sup.points[nb.index]);
      }
    } else {
      for (long j = 0; j < j_count; ++j) {
        sup_index->knn(proj.points[j], cfg.nn_first, nbrs);
        for (const Neighbor& nb : nbrs) {
          sum += nb.dist2;
          out.dvalue_dproj[j] += grad_scale * (proj.points[j] - sup.points[nb.index]);
        }
      }
    }
    out.value += sum * inv;
  }

  if (cfg.use_second) {
    const double inv = 1.0 / (static_cast<double>(k_count) * cfg.nn_second);
    const double grad_scale = 2.0 * inv;
    double sum = 0.0;
    if (cfg.nn_second == 1) {
      for (long k = 0; k < k_count; ++k) {
        const Neighbor nb = proj_index->nearest(sup.points[k]);
        sum += nb.dist2;
        out.dvalue_dproj[nb.index] += grad_scale * (proj.points[nb.index] - sup.points[k]);
      }
    } else {
      for (long k = 0; k < k_count; ++k) {
        proj_index->knn(sup.points[k], cfg.nn_second, nbrs);
        for (const Neighbor& nb : nbrs) {
          sum += nb.dist2;
          out.dvalue_dproj[nb.index] += grad_scale * (proj.points[nb.index] - sup.points[k]);
        }
      }
    }
    out.value += sum * inv;
  }
}

}  // namespace

Chamfer2DResult chamfer_2d(const PointSet2D& proj, const PointSet2D& sup, const LossConfig& cfg) {
  if (proj.size() == 0) throw EmptySet("projection set is empty");
  if (sup.size() == 0) throw EmptySet("supervision set is empty");
  const Index2D proj_index(proj);
  const Index2D sup_index(sup);
  Chamfer2DResult out;
  chamfer_terms(proj, &proj_index, sup, &sup_index, cfg, out);
  return out;
}

void chamfer_2d_indexed(const PointSet2D& proj, const Index2D& proj_index, const PointSet2D& sup,
                        const Index2D& sup_index, const LossConfig& cfg, Chamfer2DResult& out) {
  chamfer_terms(proj, &proj_index, sup, &sup_index, cfg, out);
}

LossReport multi_view_loss(const PointCloud3D& cloud, const std::vector<SupervisedView>& views,
                           const LossConfig& cfg) {
  MultiViewLossEngine engine(views, cfg);
  LossReport out;
  engine.evaluate(cloud, out);
  return out;
}

MultiViewLossEngine::MultiViewLossEngine(std::vector<SupervisedView> views, LossConfig cfg)
    : views_(std::move(views)), cfg_(cfg) {
  if (views_.empty()) throw EmptySet("no views");
  if (!cfg_.use_first && !cfg_.use_second) {
    throw std::invalid_argument("at least one loss term must be enabled");
  }
  sup_indexes_.resize(views_.size());
  for (size_t i = 0; i < views_.size(); ++i) {
    sup_indexes_[i].assign(views_[i].supervision);
  }
}

void MultiViewLossEngine::set_supervision(int view_index, PointSet2D supervision) {
  sup_indexes_[view_index].assign(supervision);
  views_[view_index].supervision = std::move(supervision);
}

void MultiViewLossEngine::evaluate(const PointCloud3D& cloud, LossReport& out) {
  const long j_count = cloud.size();
  if (j_count == 0) throw EmptySet("point cloud is empty");
  out.total = 0.0;
  out.per_view.assign(views_.size(), 0.0);
  out.grad.assign(j_count, Vec3::Zero());
  hom_a_.resize(j_count);
  hom_b_.resize(j_count);
  hom_w_.resize(j_count);
  proj_.points.resize(j_count);

  for (size_t i = 0; i < views_.size(); ++i) {
    const Camera& cam = views_[i].camera;
    const Eigen::RowVector3d r1 = cam.matrix.row(0).head<3>();
    const Eigen::RowVector3d r2 = cam.matrix.row(1).head<3>();
    const Eigen::RowVector3d r3 = cam.matrix.row(2).head<3>();
    const double t1 = cam.matrix(0, 3);
    const double t2 = cam.matrix(1, 3);
    const double t3 = cam.matrix(2, 3);
    for (long j = 0; j < j_count; ++j) {
      const Vec3& p = cloud.points[j];
      const double w = r3.dot(p) + t3;
      if (w <= kDepthEpsilon) throw DepthError(cam.view_id, j, w);
      const double a = r1.dot(p) + t1;
      const double b = r2.dot(p) + t2;
      hom_a_[j] = a;
      hom_b_[j] = b;
      hom_w_[j] = w;
      proj_.points[j] = {a / w, b / w};
    }
    proj_index_.assign(proj_);
    chamfer_2d_indexed(proj_, proj_index_, views_[i].supervision, sup_indexes_[i], cfg_,
                       view_result_);
    out.per_view[i] = view_result_.value;
    out.total += view_result_.value;

    // Chain rule through the projection: grad += J^T * dvalue_dproj with
    // J = [(w r1 - a r3); (w r2 - b r3)] / w^2.
    const Vec3 r1t = r1.transpose();
    const Vec3 r2t = r2.transpose();
    const Vec3 r3t = r3.transpose();
    for (long j = 0; j < j_count; ++j) {
      const Vec2& d = view_result_.dvalue_dproj[j];
      const double inv_w = 1.0 / hom_w_[j];
      const double c1 = d.x() * inv_w;
      const double c2 = d.y() * inv_w;
      const double c3 = -(hom_a_[j] * d.x() + hom_b_[j] * d.y()) * inv_w * inv_w;
      out.grad[j] += c1 * r1t + c2 * r2t + c3 * r3t;
    }
  }
}

}  // namespace projmatch
