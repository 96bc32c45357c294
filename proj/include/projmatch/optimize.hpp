#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "projmatch/geometry.hpp"
#include "projmatch/matching_loss.hpp"
#include "projmatch/sampling.hpp"
#include "projmatch/silhouette.hpp"

namespace projmatch {

enum class CloudInit {
  UnitSphereUniform,  ///< uniform in the unit ball
  UnitCubeUniform,    ///< uniform in [-0.5, 0.5]^3
  Provided,           ///< caller supplies the initial cloud
};

struct OptimConfig {
  long steps = 20000;
  double learning_rate = 1e-4;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  CloudInit init = CloudInit::UnitSphereUniform;
  std::uint64_t seed = 0;
  /// For the dynamic sampler: resample supervision every this many steps
  /// (0 disables resampling). Ignored by the static samplers.
  long resample_every = 0;
  long log_every = 100;
};

struct TraceRecord {
  long step = 0;
  double loss = 0.0;
  std::vector<double> per_view;
  double smoothed_loss = 0.0;
  /// 3D Chamfer against a reference cloud, when one was given.
  std::optional<double> reference_cd;
};

struct OptimTrace {
  std::vector<TraceRecord> records;
};

struct ViewInput {
  Camera camera;
  Silhouette silhouette;
};

/// Optional hooks for run(): a caller-provided initial cloud, a reference
/// cloud evaluated on logged rows, or presampled supervision sets that
/// bypass the sampler entirely.
struct RunExtras {
  const PointCloud3D* initial_cloud = nullptr;
  const PointCloud3D* reference = nullptr;
  const std::vector<PointSet2D>* supervision_override = nullptr;
};

PointCloud3D init_cloud(long n_points, const OptimConfig& cfg);

struct RunResult {
  PointCloud3D cloud;
  OptimTrace trace;
};

/// Full reconstruction: sample supervision from each silhouette, then run
/// Adam on the multi-view matching loss. The trace logs every log_every
/// steps (loss before the update) plus a final row after the last step.
RunResult run(const std::vector<ViewInput>& scene, long n_points, const SamplerConfig& sampler_cfg,
              const LossConfig& loss_cfg, const OptimConfig& optim_cfg, const RunExtras& extras = {});

}  // namespace projmatch
