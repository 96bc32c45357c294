#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "projmatch/geometry.hpp"
#include "projmatch/silhouette.hpp"

namespace projmatch {

enum class SampleMethod {
  SAS,              // structure-adaptive lattice, stride sqrt(area/K)
  Random,           // rejection sampling to exactly K points
  Pixel,            // pixel centers above threshold, repeated cyclically up to K
  PixelPlusRandom,  // pixel centers, deficit filled with random draws
  PoissonDisk,      // Bridson dart throwing, radius sqrt(area/K)/sqrt(2)
  Dynamic,          // random, reseeded per epoch
};

const char* method_name(SampleMethod m);
std::optional<SampleMethod> parse_method(const std::string& name);

struct SamplerConfig {
  SampleMethod method = SampleMethod::SAS;
  int k_target = 5000;
  double threshold = 0.5;
  std::uint64_t seed = 0;
};

/// Deterministic lattice sampling: ratio r = area/K, stride sqrt(r),
/// lattice anchored at (0,0), keeping lattice points whose interpolated
/// value exceeds the threshold. Returns approximately K points and
/// ignores the seed.
PointSet2D sample_sas(const Silhouette& s, const SamplerConfig& cfg);

/// Uniform rejection sampling over [0,W]x[0,H] until exactly K points
/// pass the threshold. Guarded against non-termination at 10000*K
/// rejections.
PointSet2D sample_random(const Silhouette& s, const SamplerConfig& cfg);

/// All pixel centers above the threshold; when fewer than K, locations
/// repeat cyclically until K. More than K inside pixels are all kept.
PointSet2D sample_pixel(const Silhouette& s, const SamplerConfig& cfg);

/// Like sample_pixel, but a positive deficit is filled with random draws
/// instead of repeats.
PointSet2D sample_pixel_plus_random(const Silhouette& s, const SamplerConfig& cfg);

/// Bridson-style Poisson-disk darts restricted to the silhouette, disk
/// radius sqrt(area/K)/sqrt(2). Restarts the dart throwing so
/// disconnected regions are reached. Returned count is whatever the
/// process yields.
PointSet2D sample_poisson(const Silhouette& s, const SamplerConfig& cfg);

/// sample_random with the seed mixed per epoch (splitmix64 of
/// (seed, epoch)); successive epochs give different sets.
PointSet2D resample_dynamic(const Silhouette& s, const SamplerConfig& cfg, long epoch);

/// Dispatch on cfg.method. The epoch only affects Dynamic.
PointSet2D sample(const Silhouette& s, const SamplerConfig& cfg, long epoch = 0);

}  // namespace projmatch
