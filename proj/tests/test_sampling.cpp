#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "projmatch/errors.hpp"
#include "projmatch/rng.hpp"
#include "projmatch/sampling.hpp"
#include "projmatch/silhouette.hpp"
#include "support/oracles.hpp"

using namespace projmatch;

namespace {

SamplerConfig cfg_of(SampleMethod m, long k, uint64_t seed = 0, double threshold = 0.5) {
  SamplerConfig cfg;
  cfg.method = m;
  cfg.k_target = k;
  cfg.seed = seed;
  cfg.threshold = threshold;
  return cfg;
}

Silhouette rect_silhouette(int size, int x0, int y0, int x1, int y1) {
  Silhouette s = Silhouette::filled(size, size, 0.0);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) s.at(x, y) = 1.0;
  }
  return s;
}

Silhouette disc_silhouette(int size, double cx, double cy, double radius) {
  Silhouette s = Silhouette::filled(size, size, 0.0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= radius * radius) s.at(x, y) = 1.0;
    }
  }
  return s;
}

// The stride scan from the contract, written independently of the library.
PointSet2D sas_oracle(const Silhouette& s, const SamplerConfig& cfg) {
  const double stride = std::sqrt(area(s) / static_cast<double>(cfg.k_target));
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

std::multiset<std::pair<double, double>> as_multiset(const PointSet2D& set) {
  std::multiset<std::pair<double, double>> out;
  for (const Vec2& p : set.points) out.insert({p.x(), p.y()});
  return out;
}

void check_membership(const Silhouette& s, const PointSet2D& set, double threshold) {
  for (const Vec2& g : set.points) CHECK(interp(s, g.x(), g.y()) > threshold);
}

}  // namespace

TEST_CASE("sas full grid on uniform silhouettes") {
  const Silhouette ones = Silhouette::filled(32, 32, 1.0);

  const PointSet2D k1024 = sample_sas(ones, cfg_of(SampleMethod::SAS, 1024));
  REQUIRE(k1024.size() == 1024);
  long i = 0;
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x, ++i) {
      CHECK(k1024.points[i].x() == static_cast<double>(x));
      CHECK(k1024.points[i].y() == static_cast<double>(y));
    }
  }

  const PointSet2D k256 = sample_sas(ones, cfg_of(SampleMethod::SAS, 256));
  REQUIRE(k256.size() == 256);
  CHECK(k256.points[0].x() == 0.0);
  CHECK(k256.points[1].x() == 2.0);
  CHECK(k256.points[255].x() == 30.0);
  CHECK(k256.points[255].y() == 30.0);
}

TEST_CASE("sas half-plane matches the lattice oracle") {
  const Silhouette half = rect_silhouette(32, 0, 0, 16, 32);
  const SamplerConfig cfg = cfg_of(SampleMethod::SAS, 512);
  const PointSet2D got = sample_sas(half, cfg);
  const PointSet2D expected = sas_oracle(half, cfg);
  REQUIRE(got.size() == expected.size());
  for (long j = 0; j < got.size(); ++j) {
    CHECK(got.points[j].x() == expected.points[j].x());
    CHECK(got.points[j].y() == expected.points[j].y());
  }
  CHECK(got.size() == 512);  // columns 0..15, all 32 rows
  CHECK(got.size() >= 461);  // within [0.9K, 1.1K]
  CHECK(got.size() <= 563);
  check_membership(half, got, cfg.threshold);
}

TEST_CASE("sas ignores the seed and stays in the count band") {
  const Silhouette disc = disc_silhouette(64, 30.0, 28.0, 13.0);
  const PointSet2D a = sample_sas(disc, cfg_of(SampleMethod::SAS, 200, 1));
  const PointSet2D b = sample_sas(disc, cfg_of(SampleMethod::SAS, 200, 99999));
  CHECK(as_multiset(a) == as_multiset(b));
  CHECK(area(disc) >= 200.0);
  CHECK(a.size() >= 140);  // [0.7K, 1.3K]
  CHECK(a.size() <= 260);
  check_membership(disc, a, 0.5);
}

TEST_CASE("sas outputs translate with the silhouette when the shift is lattice-aligned") {
  // Equal areas give stride exactly 2; an even integer shift maps the
  // kept lattice points onto each other one-for-one.
  const Silhouette base = rect_silhouette(64, 4, 4, 36, 36);
  const Silhouette moved = rect_silhouette(64, 8, 10, 40, 42);
  const SamplerConfig cfg = cfg_of(SampleMethod::SAS, 256);
  const PointSet2D from_base = sample_sas(base, cfg);
  const PointSet2D from_moved = sample_sas(moved, cfg);
  REQUIRE(from_base.size() > 0);
  std::multiset<std::pair<double, double>> shifted;
  for (const Vec2& p : from_base.points) shifted.insert({p.x() + 4.0, p.y() + 6.0});
  CHECK(shifted == as_multiset(from_moved));
}

TEST_CASE("sas translation consistency on unaligned shifts") {
  const Silhouette base = disc_silhouette(64, 20.0, 20.0, 12.0);
  const Silhouette moved = disc_silhouette(64, 27.0, 25.0, 12.0);
  const SamplerConfig cfg = cfg_of(SampleMethod::SAS, 256);
  const PointSet2D a = sample_sas(base, cfg);
  const PointSet2D b = sample_sas(moved, cfg);
  REQUIRE(a.size() > 0);
  REQUIRE(b.size() > 0);
  const double ratio = static_cast<double>(a.size()) / static_cast<double>(b.size());
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);
  const double stride = std::sqrt(area(base) / 256.0);
  for (const Vec2& p : a.points) {
    const Vec2 q{p.x() + 7.0, p.y() + 5.0};
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& g : b.points) best = std::min(best, (g - q).squaredNorm());
    CHECK(std::sqrt(best) <= 2.0 * stride + 1e-9);
  }
}

TEST_CASE("sas requires a nonempty silhouette") {
  CHECK_THROWS_AS(sample_sas(Silhouette::filled(8, 8, 0.0), cfg_of(SampleMethod::SAS, 10)),
                  EmptySilhouette);
}

TEST_CASE("random sampling returns exactly K members, deterministically") {
  const Silhouette ones = Silhouette::filled(32, 32, 1.0);
  const PointSet2D a = sample_random(ones, cfg_of(SampleMethod::Random, 333, 42));
  REQUIRE(a.size() == 333);
  for (const Vec2& g : a.points) {
    CHECK(g.x() >= 0.0);
    CHECK(g.x() <= 32.0);
    CHECK(g.y() >= 0.0);
    CHECK(g.y() <= 32.0);
  }
  const PointSet2D b = sample_random(ones, cfg_of(SampleMethod::Random, 333, 42));
  CHECK(as_multiset(a) == as_multiset(b));
  const PointSet2D c = sample_random(ones, cfg_of(SampleMethod::Random, 333, 43));
  CHECK(as_multiset(a) != as_multiset(c));

  const Silhouette half = rect_silhouette(32, 0, 0, 16, 32);
  const PointSet2D h = sample_random(half, cfg_of(SampleMethod::Random, 1000, 5));
  REQUIRE(h.size() == 1000);
  check_membership(half, h, 0.5);
  for (const Vec2& g : h.points) CHECK(g.x() < 16.0);
}

TEST_CASE("random sampling error paths") {
  CHECK_THROWS_AS(sample_random(Silhouette::filled(8, 8, 0.0), cfg_of(SampleMethod::Random, 5)),
                  EmptySilhouette);
  // One lit pixel under a threshold just shy of 1: the acceptance region
  // is a few square microns of the image, so the rejection guard trips.
  Silhouette needle = Silhouette::filled(64, 64, 0.0);
  needle.at(10, 10) = 1.0;
  CHECK_THROWS_AS(sample_random(needle, cfg_of(SampleMethod::Random, 10, 123, 0.999999)),
                  NonTermination);
}

TEST_CASE("pixel sampling enumerates centers and repeats cyclically") {
  Silhouette s = Silhouette::filled(4, 4, 0.0);
  s.at(1, 1) = 1.0;
  s.at(2, 1) = 1.0;
  s.at(1, 2) = 1.0;
  const PointSet2D out = sample_pixel(s, cfg_of(SampleMethod::Pixel, 7));
  REQUIRE(out.size() == 7);
  const std::vector<std::pair<double, double>> expected = {
      {1.5, 1.5}, {2.5, 1.5}, {1.5, 2.5}, {1.5, 1.5}, {2.5, 1.5}, {1.5, 2.5}, {1.5, 1.5}};
  for (long j = 0; j < 7; ++j) {
    CHECK(out.points[j].x() == expected[j].first);
    CHECK(out.points[j].y() == expected[j].second);
  }

  const Silhouette ones = Silhouette::filled(32, 32, 1.0);
  CHECK(sample_pixel(ones, cfg_of(SampleMethod::Pixel, 100)).size() == 1024);
  CHECK_THROWS_AS(sample_pixel(Silhouette::filled(4, 4, 0.0), cfg_of(SampleMethod::Pixel, 3)),
                  EmptySilhouette);
}

TEST_CASE("pixel-plus-random fills the deficit with random members") {
  Silhouette s = Silhouette::filled(4, 4, 0.0);
  s.at(1, 1) = 1.0;
  s.at(2, 1) = 1.0;
  s.at(1, 2) = 1.0;
  const PointSet2D out = sample_pixel_plus_random(s, cfg_of(SampleMethod::PixelPlusRandom, 7, 11));
  REQUIRE(out.size() == 7);
  CHECK(out.points[0].x() == 1.5);
  CHECK(out.points[1].x() == 2.5);
  CHECK(out.points[2].y() == 2.5);
  check_membership(s, out, 0.5);

  const Silhouette ones = Silhouette::filled(32, 32, 1.0);
  const PointSet2D plain = sample_pixel(ones, cfg_of(SampleMethod::Pixel, 100));
  const PointSet2D plus = sample_pixel_plus_random(ones, cfg_of(SampleMethod::PixelPlusRandom, 100));
  REQUIRE(plain.size() == plus.size());
  for (long j = 0; j < plain.size(); ++j) {
    CHECK(plain.points[j].x() == plus.points[j].x());
    CHECK(plain.points[j].y() == plus.points[j].y());
  }
}

TEST_CASE("poisson sampling keeps the disk separation") {
  const Silhouette ones = Silhouette::filled(64, 64, 1.0);
  const SamplerConfig cfg = cfg_of(SampleMethod::PoissonDisk, 500, 17);
  const PointSet2D out = sample_poisson(ones, cfg);
  const double rho = std::sqrt(area(ones) / 500.0) / std::sqrt(2.0);
  for (long a = 0; a < out.size(); ++a) {
    for (long b = a + 1; b < out.size(); ++b) {
      CHECK((out.points[a] - out.points[b]).squaredNorm() >= rho * rho);
    }
  }
  check_membership(ones, out, 0.5);
  CHECK(out.size() >= 250);
  CHECK(out.size() <= 750);

  const PointSet2D again = sample_poisson(ones, cfg);
  CHECK(as_multiset(out) == as_multiset(again));
}

TEST_CASE("poisson sampling reaches disconnected regions") {
  Silhouette s = Silhouette::filled(64, 64, 0.0);
  for (int y = 4; y < 20; ++y) {
    for (int x = 4; x < 20; ++x) s.at(x, y) = 1.0;
  }
  for (int y = 44; y < 60; ++y) {
    for (int x = 44; x < 60; ++x) s.at(x, y) = 1.0;
  }
  const PointSet2D out = sample_poisson(s, cfg_of(SampleMethod::PoissonDisk, 200, 3));
  bool low = false;
  bool high = false;
  for (const Vec2& g : out.points) {
    if (g.x() < 32.0 && g.y() < 32.0) low = true;
    if (g.x() > 32.0 && g.y() > 32.0) high = true;
  }
  CHECK(low);
  CHECK(high);
  check_membership(s, out, 0.5);
}

TEST_CASE("dynamic resampling derives a fresh seed per epoch") {
  const Silhouette disc = disc_silhouette(64, 32.0, 32.0, 20.0);
  SamplerConfig cfg = cfg_of(SampleMethod::Dynamic, 400, 9);
  const PointSet2D e0 = resample_dynamic(disc, cfg, 0);
  const PointSet2D e1 = resample_dynamic(disc, cfg, 1);
  REQUIRE(e0.size() == 400);
  REQUIRE(e1.size() == 400);
  CHECK(as_multiset(e0) != as_multiset(e1));
  const PointSet2D e0_again = resample_dynamic(disc, cfg, 0);
  CHECK(as_multiset(e0) == as_multiset(e0_again));
  check_membership(disc, e0, 0.5);

  SamplerConfig random_cfg = cfg_of(SampleMethod::Random, 400, mix_seed(9, 1));
  const PointSet2D direct = sample_random(disc, random_cfg);
  CHECK(as_multiset(e1) == as_multiset(direct));
}

TEST_CASE("sample dispatch routes every method") {
  const Silhouette disc = disc_silhouette(64, 32.0, 32.0, 18.0);
  for (const SampleMethod m :
       {SampleMethod::SAS, SampleMethod::Random, SampleMethod::Pixel,
        SampleMethod::PixelPlusRandom, SampleMethod::PoissonDisk, SampleMethod::Dynamic}) {
    const PointSet2D out = sample(disc, cfg_of(m, 150, 21), 2);
    CHECK(out.size() > 0);
    check_membership(disc, out, 0.5);
  }
  CHECK(as_multiset(sample(disc, cfg_of(SampleMethod::Dynamic, 150, 21), 2)) ==
        as_multiset(resample_dynamic(disc, cfg_of(SampleMethod::Dynamic, 150, 21), 2)));
  CHECK(as_multiset(sample(disc, cfg_of(SampleMethod::SAS, 150, 21), 2)) ==
        as_multiset(sample_sas(disc, cfg_of(SampleMethod::SAS, 150, 21))));
}

TEST_CASE("method names round-trip") {
  for (const SampleMethod m :
       {SampleMethod::SAS, SampleMethod::Random, SampleMethod::Pixel,
        SampleMethod::PixelPlusRandom, SampleMethod::PoissonDisk, SampleMethod::Dynamic}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_FALSE(parse_method("fibonacci").has_value());
}
