#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "projmatch/errors.hpp"
#include "projmatch/io.hpp"
#include "projmatch/optimize.hpp"
#include "projmatch/rng.hpp"
#include "projmatch/synth.hpp"
#include "support/oracles.hpp"

using namespace projmatch;

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "projmatch_io_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("xyz round-trip preserves coordinates") {
  Rng rng(41);
  const PointCloud3D cloud = testsupport::random_ball_cloud(rng, 200);
  std::ostringstream out;
  write_xyz(out, cloud);
  std::istringstream in(out.str());
  const PointCloud3D back = read_xyz(in);
  REQUIRE(back.size() == cloud.size());
  for (long j = 0; j < cloud.size(); ++j) {
    CHECK((back.points[j] - cloud.points[j]).norm() <=
          1e-8 * std::max(1.0, cloud.points[j].norm()));
  }
}

TEST_CASE("xyz reader accepts comments and rejects malformed input") {
  {
    std::istringstream in("# header\n1 2 3\n\n  4 5 6  \n# trailing\n");
    const PointCloud3D cloud = read_xyz(in);
    REQUIRE(cloud.size() == 2);
    CHECK(cloud.points[1].x() == 4.0);
  }
  {
    std::istringstream in("1 2\n");
    CHECK_THROWS_AS(read_xyz(in), IoError);
  }
  {
    std::istringstream in("1 2 3 4\n");
    CHECK_THROWS_AS(read_xyz(in), IoError);
  }
  {
    std::istringstream in("1 2 zebra\n");
    CHECK_THROWS_AS(read_xyz(in), IoError);
  }
  {
    std::istringstream in("# nothing but comments\n");
    CHECK_THROWS_AS(read_xyz(in), IoError);
  }
  {
    std::istringstream in("1 2 nan\n");
    CHECK_THROWS_AS(read_xyz(in), IoError);
  }
}

TEST_CASE("xyz file errors carry the path") {
  try {
    read_xyz_file("/nonexistent/dir/cloud.xyz");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("cloud.xyz") != std::string::npos);
  }
}

TEST_CASE("camera files round-trip bitwise") {
  Rng rng(9);
  std::vector<SceneView> views;
  const std::vector<Camera> cams = ring_cameras(3, 2.2, 55.5, 64);
  for (const Camera& cam : cams) views.push_back({cam, 64, 64});
  std::ostringstream out;
  write_cameras(out, views);
  std::istringstream in(out.str());
  const std::vector<SceneView> back = read_cameras(in);
  REQUIRE(back.size() == views.size());
  for (size_t i = 0; i < views.size(); ++i) {
    CHECK(back[i].width == views[i].width);
    CHECK(back[i].height == views[i].height);
    CHECK(back[i].camera.view_id == views[i].camera.view_id);
    // %.17g round-trips doubles exactly.
    CHECK(back[i].camera.matrix == views[i].camera.matrix);
  }
}

TEST_CASE("camera reader rejects malformed and degenerate input") {
  {
    std::istringstream in(
        "views 1\nview 0\nwidth 64\nheight 64\nmatrix 1 0 0 0 0 1 0 0\n");  // short matrix
    CHECK_THROWS_AS(read_cameras(in), IoError);
  }
  {
    // Singular left 3x3 block.
    std::istringstream in(
        "views 1\nview 0\nwidth 64\nheight 64\nmatrix 1 0 0 0 0 1 0 0 0 0 0 0\n");
    CHECK_THROWS_AS(read_cameras(in), IoError);
  }
  {
    std::istringstream in("cameras 1\n");
    CHECK_THROWS_AS(read_cameras(in), IoError);
  }
  {
    // Comments are tolerated anywhere between tokens.
    std::istringstream in(
        "# camera dump\nviews 1\n# first\nview 7\nwidth 8\nheight 9\n"
        "matrix 2 0 0 0 0 2 0 0 0 0 2 0\n");
    const std::vector<SceneView> views = read_cameras(in);
    REQUIRE(views.size() == 1);
    CHECK(views[0].camera.view_id == 7);
    CHECK(views[0].width == 8);
    CHECK(views[0].height == 9);
    CHECK(views[0].camera.matrix(0, 0) == 2.0);
  }
}

TEST_CASE("scene directory round-trip") {
  TempDir tmp;
  SceneParams params;
  params.shape = ShapeKind::TwoBars;
  params.n_points = 300;
  params.n_views = 3;
  params.image_size = 32;
  const SceneSpec spec = make_scene(params);
  const std::vector<Silhouette> sils = render_silhouettes(spec);
  std::vector<SceneView> views;
  for (const Camera& cam : spec.cameras) views.push_back({cam, 32, 32});

  const std::string dir = (tmp.path / "scene").string();
  write_scene_dir(dir, views, sils, &spec.gt_cloud);
  CHECK(fs::exists(fs::path(dir) / "cameras.txt"));
  CHECK(fs::exists(fs::path(dir) / "view_000.pgm"));
  CHECK(fs::exists(fs::path(dir) / "view_002.pgm"));
  CHECK(fs::exists(fs::path(dir) / "gt.xyz"));

  const LoadedScene loaded = load_scene_dir(dir);
  REQUIRE(loaded.views.size() == 3);
  REQUIRE(loaded.silhouettes.size() == 3);
  REQUIRE(loaded.gt.has_value());
  CHECK(loaded.gt->size() == 300);
  for (size_t i = 0; i < sils.size(); ++i) {
    CHECK(loaded.silhouettes[i].values == sils[i].values);
    CHECK(loaded.views[i].camera.matrix == views[i].camera.matrix);
  }

  // Without a ground truth file the optional stays empty.
  const std::string bare = (tmp.path / "bare").string();
  write_scene_dir(bare, views, sils);
  CHECK(!load_scene_dir(bare).gt.has_value());

  CHECK_THROWS_AS(load_scene_dir((tmp.path / "missing").string()), IoError);
}

TEST_CASE("trace csv carries the reference column only when present") {
  OptimTrace trace;
  TraceRecord a;
  a.step = 0;
  a.loss = 12.5;
  a.per_view = {6.0, 6.5};
  a.smoothed_loss = 12.5;
  TraceRecord b = a;
  b.step = 100;
  b.loss = 3.25;
  b.per_view = {1.5, 1.75};
  trace.records = {a, b};

  std::ostringstream out;
  write_trace_csv(out, trace);
  std::istringstream lines(out.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "0,12.5,6,6.5");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "100,3.25,1.5,1.75");
  CHECK(!std::getline(lines, line));

  trace.records[0].reference_cd = 20.0;
  trace.records[1].reference_cd = 5.0;
  std::ostringstream with_cd;
  write_trace_csv(with_cd, trace);
  std::istringstream lines2(with_cd.str());
  REQUIRE(std::getline(lines2, line));
  CHECK(line == "0,12.5,6,6.5,20");
  REQUIRE(std::getline(lines2, line));
  CHECK(line == "100,3.25,1.5,1.75,5");
}

TEST_CASE("manifest preserves insertion order") {
  Manifest m;
  m.add("scene", std::string("scenes/square"));
  m.add("k", static_cast<long>(3000));
  m.add("lr", 1e-4);
  std::ostringstream out;
  write_manifest(out, m);
  std::istringstream lines(out.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "scene = scenes/square");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "k = 3000");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "lr = 0.0001");
}

TEST_CASE("format_g renders doubles at the requested precision") {
  CHECK(format_g(0.0001, 6) == "0.0001");
  CHECK(format_g(12.5, 6) == "12.5");
  CHECK(format_g(1.0 / 3.0, 6) == "0.333333");
  CHECK(format_g(2.0, 17) == "2");
}
