#include "projmatch/optimize.hpp"

#include <cmath>
#include <stdexcept>

#include "projmatch/eval.hpp"
#include "projmatch/rng.hpp"

namespace projmatch {

namespace {

constexpr std::uint64_t kInitSalt = 17;
constexpr std::uint64_t kViewSaltBase = 1000;

// Smoothing factor of the logged loss EMA, a ~100 step window.
constexpr double kSmoothAlpha = 2.0 / 101.0;

void validate(const OptimConfig& cfg) {
  if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (!(cfg.adam_beta1 > 0.0 && cfg.adam_beta1 < 1.0) ||
      !(cfg.adam_beta2 > 0.0 && cfg.adam_beta2 < 1.0)) {
    throw std::invalid_argument("adam betas must lie in (0,1)");
  }
  if (cfg.log_every < 1) throw std::invalid_argument("log_every must be >= 1");
}

}  // namespace

PointCloud3D init_cloud(long n_points, const OptimConfig& cfg) {
  if (cfg.init == CloudInit::Provided) {
    throw std::invalid_argument("Provided init takes the cloud through RunExtras");
  }
  Rng rng(mix_seed(cfg.seed, kInitSalt));
  PointCloud3D cloud;
  cloud.points.reserve(n_points);
  if (cfg.init == CloudInit::UnitCubeUniform) {
    for (long j = 0; j < n_points; ++j) {
      cloud.points.push_back(
          {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)});
    }
  } else {
    while (cloud.size() < n_points) {
      const Vec3 p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      if (p.squaredNorm() <= 1.0) cloud.points.push_back(p);
    }
  }
  return cloud;
}

RunResult run(const std::vector<ViewInput>& scene, long n_points, const SamplerConfig& sampler_cfg,
              const LossConfig& loss_cfg, const OptimConfig& optim_cfg, const RunExtras& extras) {
  if (scene.empty()) throw EmptySet("scene has no views");
  validate(optim_cfg);

  std::vector<SamplerConfig> view_cfgs(scene.size(), sampler_cfg);
  std::vector<SupervisedView> views(scene.size());
  for (size_t i = 0; i < scene.size(); ++i) {
    view_cfgs[i].seed = mix_seed(sampler_cfg.seed, kViewSaltBase + i);
    views[i].camera = scene[i].camera;
    if (extras.supervision_override) {
      views[i].supervision = (*extras.supervision_override)[i];
    } else {
      views[i].supervision = sample(scene[i].silhouette, view_cfgs[i], 0);
    }
  }
  MultiViewLossEngine engine(std::move(views), loss_cfg);

  PointCloud3D cloud;
  if (optim_cfg.init == CloudInit::Provided) {
    if (!extras.initial_cloud) throw std::invalid_argument("Provided init without a cloud");
    cloud = *extras.initial_cloud;
  } else {
    cloud = init_cloud(n_points, optim_cfg);
  }
  const long j_count = cloud.size();
  if (j_count == 0) throw EmptySet("initial cloud is empty");

  std::vector<Vec3> m(j_count, Vec3::Zero());
  std::vector<Vec3> v(j_count, Vec3::Zero());
  double pow_beta1 = 1.0;
  double pow_beta2 = 1.0;

  OptimTrace trace;
  LossReport report;
  double smoothed = 0.0;
  bool smoothed_started = false;

  const auto observe = [&](long step) {
    smoothed = smoothed_started ? (1.0 - kSmoothAlpha) * smoothed + kSmoothAlpha * report.total
                                : report.total;
    smoothed_started = true;
    if (step % optim_cfg.log_every == 0 || step == optim_cfg.steps) {
      TraceRecord rec;
      rec.step = step;
      rec.loss = report.total;
      rec.per_view = report.per_view;
      rec.smoothed_loss = smoothed;
      if (extras.reference) rec.reference_cd = chamfer_3d(cloud, *extras.reference);
      trace.records.push_back(std::move(rec));
    }
  };

  const bool dynamic =
      sampler_cfg.method == SampleMethod::Dynamic && optim_cfg.resample_every > 0 &&
      !extras.supervision_override;
  for (long step = 0; step < optim_cfg.steps; ++step) {
    if (dynamic && step > 0 && step % optim_cfg.resample_every == 0) {
      const long epoch = step / optim_cfg.resample_every;
      for (size_t i = 0; i < scene.size(); ++i) {
        engine.set_supervision(static_cast<int>(i),
                               resample_dynamic(scene[i].silhouette, view_cfgs[i], epoch));
      }
    }
    try {
      engine.evaluate(cloud, report);
    } catch (const DepthError& e) {
      throw e.with_step(step);
    }
    observe(step);

    pow_beta1 *= optim_cfg.adam_beta1;
    pow_beta2 *= optim_cfg.adam_beta2;
    const double bc1 = 1.0 - pow_beta1;
    const double bc2 = 1.0 - pow_beta2;
    const double b1 = optim_cfg.adam_beta1;
    const double b2 = optim_cfg.adam_beta2;
    for (long j = 0; j < j_count; ++j) {
      const Vec3& g = report.grad[j];
      m[j] = b1 * m[j] + (1.0 - b1) * g;
      v[j].array() = b2 * v[j].array() + (1.0 - b2) * g.array().square();
      const Eigen::Array3d m_hat = m[j].array() / bc1;
      const Eigen::Array3d v_hat = v[j].array() / bc2;
      cloud.points[j].array() -=
          optim_cfg.learning_rate * m_hat / (v_hat.sqrt() + optim_cfg.adam_eps);
    }
  }

  try {
    engine.evaluate(cloud, report);
  } catch (const DepthError& e) {
    throw e.with_step(optim_cfg.steps);
  }
  observe(optim_cfg.steps);

  return {std::move(cloud), std::move(trace)};
}

}  // namespace projmatch
