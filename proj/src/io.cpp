#include "projmatch/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "projmatch/optimize.hpp"

namespace projmatch {

std::string format_g(double value, int significant_digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return buf;
}

namespace {

std::string view_image_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "view_%03d.pgm", index);
  return buf;
}

/// Drops '#' comment lines, keeping everything else for tokenization.
std::string strip_comment_lines(std::istream& in) {
  std::string kept;
  std::string line;
  while (std::getline(in, line)) {
    size_t first = 0;
    while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
    if (first < line.size() && line[first] == '#') continue;
    kept += line;
    kept += '\n';
  }
  return kept;
}

void expect_keyword(std::istringstream& tokens, const std::string& keyword) {
  std::string word;
  if (!(tokens >> word) || word != keyword) {
    throw IoError("camera file: expected '" + keyword + "'" +
                  (word.empty() ? "" : ", found '" + word + "'"));
  }
}

}  // namespace

PointCloud3D read_xyz(std::istream& in) {
  PointCloud3D cloud;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = 0;
    while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
    if (first == line.size() || line[first] == '#') continue;
    std::istringstream fields(line);
    Vec3 p;
    if (!(fields >> p.x() >> p.y() >> p.z())) {
      throw IoError("point line " + std::to_string(line_no) + " is malformed");
    }
    std::string extra;
    if (fields >> extra) {
      throw IoError("point line " + std::to_string(line_no) + " has trailing fields");
    }
    if (!p.allFinite()) {
      throw IoError("point line " + std::to_string(line_no) + " is not finite");
    }
    cloud.points.push_back(p);
  }
  if (cloud.size() == 0) throw IoError("point cloud file holds no points");
  return cloud;
}

PointCloud3D read_xyz_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return read_xyz(in);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_xyz(std::ostream& out, const PointCloud3D& cloud) {
  for (const Vec3& p : cloud.points) {
    out << format_g(p.x(), 9) << " " << format_g(p.y(), 9) << " " << format_g(p.z(), 9) << "\n";
  }
  if (!out) throw IoError("point cloud write failed");
}

void write_xyz_file(const std::string& path, const PointCloud3D& cloud) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_xyz(out, cloud);
}

std::vector<SceneView> read_cameras(std::istream& in) {
  std::istringstream tokens(strip_comment_lines(in));
  expect_keyword(tokens, "views");
  long count = 0;
  if (!(tokens >> count) || count < 1) throw IoError("camera file: bad view count");
  std::vector<SceneView> views(count);
  for (long i = 0; i < count; ++i) {
    SceneView& view = views[i];
    expect_keyword(tokens, "view");
    if (!(tokens >> view.camera.view_id)) throw IoError("camera file: bad view id");
    expect_keyword(tokens, "width");
    if (!(tokens >> view.width) || view.width < 1) throw IoError("camera file: bad width");
    expect_keyword(tokens, "height");
    if (!(tokens >> view.height) || view.height < 1) throw IoError("camera file: bad height");
    expect_keyword(tokens, "matrix");
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 4; ++col) {
        if (!(tokens >> view.camera.matrix(row, col))) {
          throw IoError("camera file: bad matrix entry in view " + std::to_string(i));
        }
      }
    }
    if (!view.camera.valid()) {
      throw IoError("camera file: degenerate matrix in view " + std::to_string(i));
    }
  }
  return views;
}

std::vector<SceneView> read_cameras_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return read_cameras(in);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_cameras(std::ostream& out, const std::vector<SceneView>& views) {
  out << "views " << views.size() << "\n";
  for (const SceneView& view : views) {
    out << "view " << view.camera.view_id << "\n";
    out << "width " << view.width << "\n";
    out << "height " << view.height << "\n";
    out << "matrix";
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 4; ++col) {
        out << " " << format_g(view.camera.matrix(row, col), 17);
      }
    }
    out << "\n";
  }
  if (!out) throw IoError("camera write failed");
}

void write_cameras_file(const std::string& path, const std::vector<SceneView>& views) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_cameras(out, views);
}

LoadedScene load_scene_dir(const std::string& dir) {
  LoadedScene scene;
  scene.dir = dir;
  scene.views = read_cameras_file(dir + "/cameras.txt");
  scene.silhouettes.reserve(scene.views.size());
  for (size_t i = 0; i < scene.views.size(); ++i) {
    const std::string path = dir + "/" + view_image_name(static_cast<int>(i));
    Silhouette s = load_silhouette(path);
    if (s.width != scene.views[i].width || s.height != scene.views[i].height) {
      throw ShapeMismatch(path + " does not match the camera file dimensions");
    }
    scene.silhouettes.push_back(std::move(s));
  }
  const std::string gt_path = dir + "/gt.xyz";
  if (std::filesystem::exists(gt_path)) scene.gt = read_xyz_file(gt_path);
  return scene;
}

void write_scene_dir(const std::string& dir, const std::vector<SceneView>& views,
                     const std::vector<Silhouette>& silhouettes, const PointCloud3D* gt) {
  if (views.size() != silhouettes.size()) {
    throw ShapeMismatch("one silhouette per camera view is required");
  }
  std::filesystem::create_directories(dir);
  write_cameras_file(dir + "/cameras.txt", views);
  for (size_t i = 0; i < silhouettes.size(); ++i) {
    write_pgm_file(silhouettes[i], dir + "/" + view_image_name(static_cast<int>(i)));
  }
  if (gt) write_xyz_file(dir + "/gt.xyz", *gt);
}

void write_trace_csv(std::ostream& out, const OptimTrace& trace) {
  for (const TraceRecord& rec : trace.records) {
    out << rec.step << "," << format_g(rec.loss, 17);
    for (double v : rec.per_view) out << "," << format_g(v, 17);
    if (rec.reference_cd) out << "," << format_g(*rec.reference_cd, 17);
    out << "\n";
  }
  if (!out) throw IoError("trace write failed");
}

void write_trace_csv_file(const std::string& path, const OptimTrace& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_trace_csv(out, trace);
}

void Manifest::add(const std::string& key, const std::string& value) {
  entries.emplace_back(key, value);
}

void Manifest::add(const std::string& key, double value) {
  entries.emplace_back(key, format_g(value, 17));
}

void Manifest::add(const std::string& key, long value) {
  entries.emplace_back(key, std::to_string(value));
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
  for (const auto& [key, value] : manifest.entries) out << key << " = " << value << "\n";
  if (!out) throw IoError("manifest write failed");
}

void write_manifest_file(const std::string& path, const Manifest& manifest) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_manifest(out, manifest);
}

}  // namespace projmatch
