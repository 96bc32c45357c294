#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "projmatch/eval.hpp"
#include "projmatch/io.hpp"
#include "projmatch/optimize.hpp"
#include "projmatch/sampling.hpp"
#include "projmatch/synth.hpp"

namespace {

using namespace projmatch;

struct SynthArgs {
  std::string shape = "square";
  int views = 5;
  int res = 64;
  long points = 2048;
  double splat_radius = 0.0;
  double cam_radius = 2.0;
  double focal = 0.0;
  std::uint64_t seed = 0;
  std::string input;
  std::string out;
};

void cmd_synth(const SynthArgs& args) {
  SceneParams params;
  params.shape = parse_shape(args.shape);
  if (params.shape == ShapeKind::FromFile && args.input.empty()) {
    throw std::invalid_argument("--shape fromfile requires --input");
  }
  params.n_points = args.points;
  params.n_views = args.views;
  params.image_size = args.res;
  params.camera_radius = args.cam_radius;
  params.focal = args.focal;
  params.splat_radius = args.splat_radius;
  params.seed = args.seed;
  params.input_path = args.input;

  const SceneSpec spec = make_scene(params);
  const std::vector<Silhouette> silhouettes = render_silhouettes(spec);
  std::vector<SceneView> views(spec.cameras.size());
  for (size_t i = 0; i < spec.cameras.size(); ++i) {
    views[i] = {spec.cameras[i], spec.image_width, spec.image_height};
  }
  write_scene_dir(args.out, views, silhouettes, &spec.gt_cloud);
}

struct SampleArgs {
  std::string image;
  std::string method = "sas";
  int k = 5000;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  long epoch = 0;
  std::string out;
};

void cmd_sample(const SampleArgs& args) {
  const auto method = parse_method(args.method);
  if (!method) throw std::invalid_argument("unknown sampling method: " + args.method);
  SamplerConfig cfg;
  cfg.method = *method;
  cfg.k_target = args.k;
  cfg.threshold = args.threshold;
  cfg.seed = args.seed;
  const Silhouette s = load_silhouette(args.image);
  const PointSet2D points = sample(s, cfg, args.epoch);

  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw IoError("cannot open " + args.out + " for writing");
  }
  std::ostream& out = args.out.empty() ? std::cout : file;
  for (const Vec2& p : points.points) {
    out << format_g(p.x(), 9) << " " << format_g(p.y(), 9) << "\n";
  }
  if (!out) throw IoError("point set write failed");
}

struct ReconstructArgs {
  std::string scene;
  long points = 2048;
  std::string sampler = "sas";
  int k = 5000;
  double threshold = 0.5;
  int nn_first = 1;
  int nn_second = 1;
  bool first_only = false;
  bool second_only = false;
  long steps = 20000;
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::string init = "sphere";
  std::uint64_t seed = 0;
  long resample_every = -1;  // -1 picks 100 for dynamic, 0 otherwise
  long log_every = 100;
  std::string out = ".";
};

struct ResolvedRun {
  SamplerConfig sampler;
  LossConfig loss;
  OptimConfig optim;
};

ResolvedRun resolve(const ReconstructArgs& args) {
  ResolvedRun r;
  const auto method = parse_method(args.sampler);
  if (!method) throw std::invalid_argument("unknown sampling method: " + args.sampler);
  r.sampler.method = *method;
  r.sampler.k_target = args.k;
  r.sampler.threshold = args.threshold;
  r.sampler.seed = args.seed;

  r.loss.nn_first = args.nn_first;
  r.loss.nn_second = args.nn_second;
  r.loss.use_first = !args.second_only;
  r.loss.use_second = !args.first_only;

  r.optim.steps = args.steps;
  r.optim.learning_rate = args.lr;
  r.optim.adam_beta1 = args.beta1;
  r.optim.adam_beta2 = args.beta2;
  r.optim.adam_eps = args.eps;
  if (args.init == "sphere") {
    r.optim.init = CloudInit::UnitSphereUniform;
  } else if (args.init == "cube") {
    r.optim.init = CloudInit::UnitCubeUniform;
  } else {
    throw std::invalid_argument("--init must be sphere or cube");
  }
  r.optim.seed = args.seed;
  r.optim.resample_every =
      args.resample_every >= 0 ? args.resample_every
                               : (r.sampler.method == SampleMethod::Dynamic ? 100 : 0);
  r.optim.log_every = args.log_every;
  return r;
}

std::vector<ViewInput> scene_inputs(const LoadedScene& scene) {
  std::vector<ViewInput> inputs(scene.views.size());
  for (size_t i = 0; i < scene.views.size(); ++i) {
    inputs[i] = {scene.views[i].camera, scene.silhouettes[i]};
  }
  return inputs;
}

void cmd_reconstruct(const ReconstructArgs& args) {
  const LoadedScene scene = load_scene_dir(args.scene);
  const ResolvedRun r = resolve(args);
  RunExtras extras;
  if (scene.gt) extras.reference = &*scene.gt;
  const RunResult result = run(scene_inputs(scene), args.points, r.sampler, r.loss, r.optim, extras);

  std::filesystem::create_directories(args.out);
  const std::string recon_path = args.out + "/recon.xyz";
  const std::string trace_path = args.out + "/trace.csv";
  write_xyz_file(recon_path, result.cloud);
  write_trace_csv_file(trace_path, result.trace);

  Manifest manifest;
  manifest.add("scene", args.scene);
  manifest.add("points", args.points);
  manifest.add("sampler", std::string(method_name(r.sampler.method)));
  manifest.add("k", static_cast<long>(r.sampler.k_target));
  manifest.add("threshold", r.sampler.threshold);
  manifest.add("seed", std::to_string(args.seed));
  manifest.add("nn_first", static_cast<long>(r.loss.nn_first));
  manifest.add("nn_second", static_cast<long>(r.loss.nn_second));
  manifest.add("use_first", std::string(r.loss.use_first ? "true" : "false"));
  manifest.add("use_second", std::string(r.loss.use_second ? "true" : "false"));
  manifest.add("steps", r.optim.steps);
  manifest.add("lr", r.optim.learning_rate);
  manifest.add("beta1", r.optim.adam_beta1);
  manifest.add("beta2", r.optim.adam_beta2);
  manifest.add("eps", r.optim.adam_eps);
  manifest.add("init", args.init);
  manifest.add("resample_every", r.optim.resample_every);
  manifest.add("log_every", r.optim.log_every);
  manifest.add("recon", recon_path);
  manifest.add("trace", trace_path);
  write_manifest_file(args.out + "/manifest.txt", manifest);
}

void cmd_eval(const std::string& recon_path, const std::string& gt_path) {
  const PointCloud3D recon = read_xyz_file(recon_path);
  const PointCloud3D gt = read_xyz_file(gt_path);
  const double cd = chamfer_3d(recon, gt);
  const Box3 bounds = union_bounds(recon, gt);
  const double overlap = iou(voxelize(recon, bounds), voxelize(gt, bounds));
  std::cout << "cd=" << format_g(cd, 6) << " iou=" << format_g(overlap, 6) << "\n";
}

struct SweepArgs {
  std::string scene;
  std::string axis;
  ReconstructArgs base;
  bool parallel = false;
  std::string out;
};

/// One sweep setting: label plus the tweak it applies to the base args.
struct SweepSetting {
  std::string label;
  std::function<void(ReconstructArgs&)> tweak;
};

std::string sweep_row(const LoadedScene& scene, const PointCloud3D& gt,
                      const ReconstructArgs& args) {
  const ResolvedRun r = resolve(args);
  const RunResult result = run(scene_inputs(scene), args.points, r.sampler, r.loss, r.optim);
  const double cd = chamfer_3d(result.cloud, gt);
  return format_g(result.trace.records.back().loss, 6) + "," + format_g(cd, 6);
}

/// Rescales a scene's cameras and re-splats its GT cloud at a new image
/// resolution, keeping the world-space footprint.
LoadedScene rescale_scene(const LoadedScene& scene, const PointCloud3D& gt, int res) {
  LoadedScene scaled;
  scaled.dir = scene.dir;
  scaled.gt = gt;
  scaled.views = scene.views;
  for (SceneView& view : scaled.views) {
    const double ratio = static_cast<double>(res) / view.width;
    view.camera.matrix.row(0) *= ratio;
    view.camera.matrix.row(1) *= ratio;
    view.width = res;
    view.height = res;
  }
  const double radius = 1.5 * res / 64.0;
  scaled.silhouettes.reserve(scaled.views.size());
  for (const SceneView& view : scaled.views) {
    scaled.silhouettes.push_back(splat_silhouette(gt, view.camera, res, res, radius));
  }
  return scaled;
}

void cmd_sweep(const SweepArgs& args) {
  const LoadedScene scene = load_scene_dir(args.scene);
  if (!scene.gt) throw IoError("sweep needs gt.xyz in the scene directory");
  const PointCloud3D& gt = *scene.gt;

  std::vector<SweepSetting> settings;
  std::vector<LoadedScene> scaled_scenes;  // keeps resolution variants alive
  const LoadedScene* run_scene = &scene;
  if (args.axis == "loss-variant") {
    settings.push_back({"first-only", [](ReconstructArgs& a) { a.first_only = true; }});
    settings.push_back({"second-only", [](ReconstructArgs& a) { a.second_only = true; }});
    settings.push_back({"both", [](ReconstructArgs&) {}});
  } else if (args.axis == "k") {
    for (int k : {1000, 3000, 5000, 7000, 9000}) {
      settings.push_back({std::to_string(k), [k](ReconstructArgs& a) { a.k = k; }});
    }
  } else if (args.axis == "sampler") {
    for (const char* name : {"sas", "random", "pixel", "pixran", "poisson", "dynamic"}) {
      settings.push_back({name, [name](ReconstructArgs& a) { a.sampler = name; }});
    }
  } else if (args.axis == "resolution") {
    for (int res : {32, 64, 128}) {
      scaled_scenes.push_back(rescale_scene(scene, gt, res));
      settings.push_back({std::to_string(res), [](ReconstructArgs&) {}});
    }
  } else {
    throw std::invalid_argument("--axis must be loss-variant, k, sampler, or resolution");
  }

  std::vector<std::string> rows(settings.size());
  const auto compute_row = [&](size_t i) {
    ReconstructArgs run_args = args.base;
    run_args.scene = args.scene;
    settings[i].tweak(run_args);
    const LoadedScene& target =
        args.axis == "resolution" ? scaled_scenes[i] : *run_scene;
    return settings[i].label + "," + sweep_row(target, gt, run_args);
  };
  if (args.parallel) {
    std::vector<std::future<std::string>> futures;
    futures.reserve(settings.size());
    for (size_t i = 0; i < settings.size(); ++i) {
      futures.push_back(std::async(std::launch::async, compute_row, i));
    }
    for (size_t i = 0; i < settings.size(); ++i) rows[i] = futures[i].get();
  } else {
    for (size_t i = 0; i < settings.size(); ++i) rows[i] = compute_row(i);
  }

  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw IoError("cannot open " + args.out + " for writing");
  }
  std::ostream& out = args.out.empty() ? std::cout : file;
  for (const std::string& row : rows) out << row << "\n";
  if (!out) throw IoError("sweep write failed");
}

void add_reconstruct_flags(CLI::App* cmd, ReconstructArgs& args) {
  cmd->add_option("--points", args.points, "Number of points to reconstruct")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--sampler", args.sampler, "Supervision sampler")->default_val("sas");
  cmd->add_option("--k", args.k, "Target supervision point count")->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", args.threshold, "Inside/outside cutoff");
  cmd->add_option("--nn-first", args.nn_first, "Neighbors averaged in the first term")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--nn-second", args.nn_second, "Neighbors averaged in the second term")
      ->check(CLI::PositiveNumber);
  auto* first = cmd->add_flag("--first-only", args.first_only, "Drop the second loss term");
  auto* second = cmd->add_flag("--second-only", args.second_only, "Drop the first loss term");
  first->excludes(second);
  cmd->add_option("--steps", args.steps, "Optimization steps")->check(CLI::PositiveNumber);
  cmd->add_option("--lr", args.lr, "Adam learning rate");
  cmd->add_option("--beta1", args.beta1, "Adam beta1");
  cmd->add_option("--beta2", args.beta2, "Adam beta2");
  cmd->add_option("--eps", args.eps, "Adam epsilon");
  cmd->add_option("--init", args.init, "Initial cloud: sphere or cube");
  cmd->add_option("--seed", args.seed, "Randomness seed");
  cmd->add_option("--resample-every", args.resample_every,
                  "Dynamic resampling period in steps (-1 = auto)");
  cmd->add_option("--log-every", args.log_every, "Trace logging period")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point cloud reconstruction by multi-view 2D projection matching"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic scene directory");
  synth->add_option("--shape", synth_args.shape, "square, twobars, helix, or fromfile");
  synth->add_option("--views", synth_args.views, "Number of ring cameras")
      ->check(CLI::PositiveNumber);
  synth->add_option("--res", synth_args.res, "Image resolution")->check(CLI::PositiveNumber);
  synth->add_option("--points", synth_args.points, "Ground-truth point count")
      ->check(CLI::PositiveNumber);
  synth->add_option("--radius", synth_args.splat_radius, "Splat radius in pixels (0 = auto)");
  synth->add_option("--cam-radius", synth_args.cam_radius, "Camera ring radius");
  synth->add_option("--focal", synth_args.focal, "Focal length in pixels (0 = resolution)");
  synth->add_option("--seed", synth_args.seed, "Randomness seed");
  synth->add_option("--input", synth_args.input, "Point cloud file for --shape fromfile");
  synth->add_option("--out", synth_args.out, "Scene directory to write")->required();

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "Sample supervision points from a silhouette");
  sample_cmd->add_option("image", sample_args.image, "Silhouette image")->required();
  sample_cmd->add_option("--method", sample_args.method, "Sampling method");
  sample_cmd->add_option("--k", sample_args.k, "Target point count")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--threshold", sample_args.threshold, "Inside/outside cutoff");
  sample_cmd->add_option("--seed", sample_args.seed, "Randomness seed");
  sample_cmd->add_option("--epoch", sample_args.epoch, "Epoch for the dynamic method");
  sample_cmd->add_option("--out", sample_args.out, "Output file (default: stdout)");

  ReconstructArgs recon_args;
  auto* recon = app.add_subcommand("reconstruct", "Reconstruct a cloud from a scene directory");
  recon->add_option("scene", recon_args.scene, "Scene directory")->required();
  add_reconstruct_flags(recon, recon_args);
  recon->add_option("--out", recon_args.out, "Output directory");

  std::string eval_recon, eval_gt;
  auto* eval_cmd = app.add_subcommand("eval", "Compare two point clouds");
  eval_cmd->add_option("recon", eval_recon, "Reconstructed cloud")->required();
  eval_cmd->add_option("gt", eval_gt, "Reference cloud")->required();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run an ablation axis over a scene");
  sweep->add_option("scene", sweep_args.scene, "Scene directory")->required();
  sweep->add_option("--axis", sweep_args.axis, "loss-variant, k, sampler, or resolution")
      ->required();
  add_reconstruct_flags(sweep, sweep_args.base);
  sweep->add_flag("--parallel", sweep_args.parallel, "Run settings concurrently");
  sweep->add_option("--out", sweep_args.out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) cmd_synth(synth_args);
    if (sample_cmd->parsed()) cmd_sample(sample_args);
    if (recon->parsed()) cmd_reconstruct(recon_args);
    if (eval_cmd->parsed()) cmd_eval(eval_recon, eval_gt);
    if (sweep->parsed()) cmd_sweep(sweep_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
