#include "projmatch/sampling.hpp"

#include <cmath>
#include <vector>

#include "projmatch/rng.hpp"

namespace projmatch {

const char* method_name(SampleMethod m) {
  switch (m) {
    case SampleMethod::SAS: return "sas";
    case SampleMethod::Random: return "random";
    case SampleMethod::Pixel: return "pixel";
    case SampleMethod::PixelPlusRandom: return "pixran";
    case SampleMethod::PoissonDisk: return "poisson";
    case SampleMethod::Dynamic: return "dynamic";
  }
  return "unknown";
}

std::optional<SampleMethod> parse_method(const std::string& name) {
  if (name == "sas") return SampleMethod::SAS;
  if (name == "random") return SampleMethod::Random;
  if (name == "pixel") return SampleMethod::Pixel;
  if (name == "pixran") return SampleMethod::PixelPlusRandom;
  if (name == "poisson") return SampleMethod::PoissonDisk;
  if (name == "dynamic") return SampleMethod::Dynamic;
  return std::nullopt;
}

namespace {

double require_area(const Silhouette& s) {
  const double a = area(s);
  if (a <= 0.0) throw EmptySilhouette();
  return a;
}

/// Pixel centers with stored value above the threshold, row-major order.
std::vector<Vec2> inside_pixel_centers(const Silhouette& s, double threshold) {
  std::vector<Vec2> centers;
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) {
      if (s.at(x, y) > threshold) centers.push_back({x + 0.5, y + 0.5});
    }
  }
  return centers;
}

}  // namespace

PointSet2D sample_sas(const Silhouette& s, const SamplerConfig& cfg) {
  const double a = require_area(s);
  const double stride = std::sqrt(a / cfg.k_target);
  PointSet2D out;
  for (long my = 0;; ++my) {
    const double y = my * stride;
    if (y >= s.height) break;
    for (long mx = 0;; ++mx) {
      const double x = mx * stride;
      if (x >= s.width) break;
      if (interp(s, x, y) > cfg.threshold) out.points.push_back({x, y});
    }
  }
  return out;
}

PointSet2D sample_random(const Silhouette& s, const SamplerConfig& cfg) {
  require_area(s);
  Rng rng(cfg.seed);
  const long limit = 10000L * cfg.k_target;
  long rejected = 0;
  PointSet2D out;
  out.points.reserve(cfg.k_target);
  while (out.size() < cfg.k_target) {
    const double x = rng.uniform(0.0, s.width);
    const double y = rng.uniform(0.0, s.height);
    if (interp(s, x, y) > cfg.threshold) {
      out.points.push_back({x, y});
    } else if (++rejected > limit) {
      throw NonTermination("random sampling rejected 10000*K draws");
    }
  }
  return out;
}

PointSet2D sample_pixel(const Silhouette& s, const SamplerConfig& cfg) {
  std::vector<Vec2> centers = inside_pixel_centers(s, cfg.threshold);
  if (centers.empty()) throw EmptySilhouette("no pixel above the sampling threshold");
  PointSet2D out;
  out.points = std::move(centers);
  const size_t base = out.points.size();
  for (size_t i = base; i < static_cast<size_t>(cfg.k_target); ++i) {
    out.points.push_back(out.points[i % base]);
  }
  return out;
}

PointSet2D sample_pixel_plus_random(const Silhouette& s, const SamplerConfig& cfg) {
  std::vector<Vec2> centers = inside_pixel_centers(s, cfg.threshold);
  if (centers.empty()) throw EmptySilhouette("no pixel above the sampling threshold");
  PointSet2D out;
  out.points = std::move(centers);
  const long deficit = cfg.k_target - out.size();
  if (deficit > 0) {
    SamplerConfig fill = cfg;
    fill.k_target = static_cast<int>(deficit);
    const PointSet2D extra = sample_random(s, fill);
    out.points.insert(out.points.end(), extra.points.begin(), extra.points.end());
  }
  return out;
}

PointSet2D sample_poisson(const Silhouette& s, const SamplerConfig& cfg) {
  const double a = require_area(s);
  const double rho = std::sqrt(a / cfg.k_target) / std::sqrt(2.0);
  const double rho2 = rho * rho;
  // Cell diagonal = rho, so a cell holds at most one accepted point and
  // conflicts are confined to the 5x5 cell neighborhood.
  const double cell = rho / std::sqrt(2.0);
  const int nx = static_cast<int>(std::ceil(s.width / cell));
  const int ny = static_cast<int>(std::ceil(s.height / cell));
  std::vector<int> grid(static_cast<size_t>(nx) * ny, -1);
  PointSet2D out;
  std::vector<int> active;
  Rng rng(cfg.seed);

  const auto cell_of = [&](const Vec2& p) {
    const int gx = std::min(static_cast<int>(p.x() / cell), nx - 1);
    const int gy = std::min(static_cast<int>(p.y() / cell), ny - 1);
    return gy * nx + gx;
  };
  const auto conflicts = [&](const Vec2& p) {
    const int gx = std::min(static_cast<int>(p.x() / cell), nx - 1);
    const int gy = std::min(static_cast<int>(p.y() / cell), ny - 1);
    for (int dy = -2; dy <= 2; ++dy) {
      const int yy = gy + dy;
      if (yy < 0 || yy >= ny) continue;
      for (int dx = -2; dx <= 2; ++dx) {
        const int xx = gx + dx;
        if (xx < 0 || xx >= nx) continue;
        const int id = grid[static_cast<size_t>(yy) * nx + xx];
        if (id >= 0 && (out.points[id] - p).squaredNorm() < rho2) return true;
      }
    }
    return false;
  };
  const auto accept = [&](const Vec2& p) {
    const int id = static_cast<int>(out.points.size());
    out.points.push_back(p);
    grid[cell_of(p)] = id;
    active.push_back(id);
  };

  // Seed darts restart the process so disconnected silhouette regions are
  // reached; the dart budget covers all restarts.
  long darts_left = 10000L + 10L * cfg.k_target;
  for (;;) {
    bool seeded = false;
    while (darts_left > 0) {
      --darts_left;
      const Vec2 p{rng.uniform(0.0, s.width), rng.uniform(0.0, s.height)};
      if (interp(s, p.x(), p.y()) > cfg.threshold && !conflicts(p)) {
        accept(p);
        seeded = true;
        break;
      }
    }
    if (!seeded) break;

    while (!active.empty()) {
      const long slot = rng.index(static_cast<long>(active.size()));
      const Vec2 center = out.points[active[slot]];
      bool placed = false;
      for (int attempt = 0; attempt < 30; ++attempt) {
        const double radius = rho * std::sqrt(1.0 + 3.0 * rng.uniform01());
        const double angle = 2.0 * M_PI * rng.uniform01();
        const Vec2 p = center + radius * Vec2{std::cos(angle), std::sin(angle)};
        if (interp(s, p.x(), p.y()) > cfg.threshold && !conflicts(p)) {
          accept(p);
          placed = true;
          break;
        }
      }
      if (!placed) {
        active[slot] = active.back();
        active.pop_back();
      }
    }
  }
  return out;
}

PointSet2D resample_dynamic(const Silhouette& s, const SamplerConfig& cfg, long epoch) {
  SamplerConfig epoch_cfg = cfg;
  epoch_cfg.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(epoch));
  return sample_random(s, epoch_cfg);
}

PointSet2D sample(const Silhouette& s, const SamplerConfig& cfg, long epoch) {
  switch (cfg.method) {
    case SampleMethod::SAS: return sample_sas(s, cfg);
    case SampleMethod::Random: return sample_random(s, cfg);
    case SampleMethod::Pixel: return sample_pixel(s, cfg);
    case SampleMethod::PixelPlusRandom: return sample_pixel_plus_random(s, cfg);
    case SampleMethod::PoissonDisk: return sample_poisson(s, cfg);
    case SampleMethod::Dynamic: return resample_dynamic(s, cfg, epoch);
  }
  throw std::runtime_error("unreachable sampler dispatch");
}

}  // namespace projmatch
