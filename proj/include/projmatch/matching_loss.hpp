#pragma once

#include <vector>

#include "projmatch/geometry.hpp"
#include "projmatch/nn_index.hpp"

namespace projmatch {

/// Configuration of the two-sided 2D matching loss. nn_first / nn_second
/// are the neighbor counts averaged in the projection-to-supervision and
/// supervision-to-projection terms. At least one term must be enabled.
struct LossConfig {
  int nn_first = 1;
  int nn_second = 1;
  bool use_first = true;
  bool use_second = true;
};

struct Chamfer2DResult {
  double value = 0.0;
  /// d(value)/d(proj[j]), same order as the projection set.
  std::vector<Vec2> dvalue_dproj;
};

/// Two-sided Chamfer distance between a projection set (size J) and a
/// supervision set (size K):
///
///   value = [use_first]  (1/J) sum_j mean_{g in aNN(q_j)} |q_j - g|^2
///         + [use_second] (1/K) sum_k mean_{q in bNN(g_k)} |g_k - q|^2
///
/// with the gradient taken with respect to the projections. Neighbor ties
/// break toward the smaller index, so values and gradients are
/// reproducible bit for bit.
Chamfer2DResult chamfer_2d(const PointSet2D& proj, const PointSet2D& sup, const LossConfig& cfg);

/// Same computation against prebuilt indexes; the optimizer's hot path.
/// proj_index must index proj and sup_index must index sup.
void chamfer_2d_indexed(const PointSet2D& proj, const Index2D& proj_index, const PointSet2D& sup,
                        const Index2D& sup_index, const LossConfig& cfg, Chamfer2DResult& out);

struct SupervisedView {
  Camera camera;
  PointSet2D supervision;
};

struct LossReport {
  double total = 0.0;
  std::vector<double> per_view;
  /// dL/dp_j for every cloud point, all views accumulated.
  std::vector<Vec3> grad;
};

/// Multi-view loss: the per-view Chamfer terms summed over views, with
/// gradients chained through the perspective projection. Summation order
/// is fixed (by view, then point index). Throws DepthError with the
/// offending view and point index.
LossReport multi_view_loss(const PointCloud3D& cloud, const std::vector<SupervisedView>& views,
                           const LossConfig& cfg);

/// Reusable evaluator holding per-view supervision indexes and scratch
/// buffers, so repeated evaluations over a fixed scene allocate nothing.
class MultiViewLossEngine {
public:
  MultiViewLossEngine(std::vector<SupervisedView> views, LossConfig cfg);

  /// Replaces one view's supervision (dynamic resampling).
  void set_supervision(int view_index, PointSet2D supervision);

  void evaluate(const PointCloud3D& cloud, LossReport& out);

  const std::vector<SupervisedView>& views() const { return views_; }
  const LossConfig& config() const { return cfg_; }

private:
  std::vector<SupervisedView> views_;
  std::vector<Index2D> sup_indexes_;
  LossConfig cfg_;
  // scratch
  PointSet2D proj_;
  std::vector<double> hom_a_, hom_b_, hom_w_;
  Index2D proj_index_;
  Chamfer2DResult view_result_;
};

}  // namespace projmatch
