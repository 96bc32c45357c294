#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projmatch/geometry.hpp"
#include "projmatch/silhouette.hpp"

namespace projmatch {

/// printf-style %.<sig>g formatting; the one float-to-text path used by
/// every writer so outputs are reproducible across runs.
std::string format_g(double value, int significant_digits);

PointCloud3D read_xyz(std::istream& in);
PointCloud3D read_xyz_file(const std::string& path);
void write_xyz(std::ostream& out, const PointCloud3D& cloud);
void write_xyz_file(const std::string& path, const PointCloud3D& cloud);

struct SceneView {
  Camera camera;
  int width = 0;
  int height = 0;
};

std::vector<SceneView> read_cameras(std::istream& in);
std::vector<SceneView> read_cameras_file(const std::string& path);
void write_cameras(std::ostream& out, const std::vector<SceneView>& views);
void write_cameras_file(const std::string& path, const std::vector<SceneView>& views);

struct LoadedScene {
  std::vector<SceneView> views;
  std::vector<Silhouette> silhouettes;
  std::optional<PointCloud3D> gt;
  std::string dir;
};

/// Loads cameras.txt, one silhouette per view (view_000.pgm, ...), and
/// gt.xyz when present.
LoadedScene load_scene_dir(const std::string& dir);

void write_scene_dir(const std::string& dir, const std::vector<SceneView>& views,
                     const std::vector<Silhouette>& silhouettes,
                     const PointCloud3D* gt = nullptr);

struct TraceRecord;
struct OptimTrace;

/// CSV rows "step,loss,<per-view losses>[,cd]". No header row.
void write_trace_csv(std::ostream& out, const OptimTrace& trace);
void write_trace_csv_file(const std::string& path, const OptimTrace& trace);

/// Ordered "key = value" run description.
struct Manifest {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long value);
};

void write_manifest(std::ostream& out, const Manifest& manifest);
void write_manifest_file(const std::string& path, const Manifest& manifest);

}  // namespace projmatch
