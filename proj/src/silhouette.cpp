#include "projmatch/silhouette.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace projmatch {

Silhouette Silhouette::filled(int width, int height, double value) {
  Silhouette s;
  s.width = width;
  s.height = height;
  s.values.assign(static_cast<size_t>(width) * height, value);
  return s;
}

double interp(const Silhouette& s, double x, double y) {
  if (x < 0.0 || y < 0.0 || x > s.width || y > s.height) return 0.0;
  const double u = x - 0.5;
  const double v = y - 0.5;
  const double fu = std::floor(u);
  const double fv = std::floor(v);
  const double tx = u - fu;
  const double ty = v - fv;
  const int x0 = std::clamp(static_cast<int>(fu), 0, s.width - 1);
  const int x1 = std::clamp(static_cast<int>(fu) + 1, 0, s.width - 1);
  const int y0 = std::clamp(static_cast<int>(fv), 0, s.height - 1);
  const int y1 = std::clamp(static_cast<int>(fv) + 1, 0, s.height - 1);
  const double top = s.at(x0, y0) + (s.at(x1, y0) - s.at(x0, y0)) * tx;
  const double bottom = s.at(x0, y1) + (s.at(x1, y1) - s.at(x0, y1)) * tx;
  return top + (bottom - top) * ty;
}

double area(const Silhouette& s) {
  long count = 0;
  for (double v : s.values) {
    if (v >= 0.999) ++count;
  }
  return static_cast<double>(count);
}

namespace {

/// Reads the next integer of a graymap header, skipping whitespace and
/// '#' comments.
int next_pnm_int(std::istream& in) {
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
    } else if (!std::isspace(c)) {
      in.unget();
      break;
    }
  }
  int value = 0;
  if (!(in >> value)) throw IoError("malformed graymap header");
  return value;
}

std::vector<SilhouetteDecoder>& decoder_registry() {
  static std::vector<SilhouetteDecoder> decoders;
  return decoders;
}

}  // namespace

Silhouette read_pgm(std::istream& in) {
  const int m0 = in.get();
  const int m1 = in.get();
  if (m0 != 'P' || (m1 != '2' && m1 != '5')) throw IoError("not a P2/P5 graymap");
  const bool binary = m1 == '5';
  const int width = next_pnm_int(in);
  const int height = next_pnm_int(in);
  const int maxval = next_pnm_int(in);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255) {
    throw IoError("unsupported graymap geometry");
  }
  Silhouette s;
  s.width = width;
  s.height = height;
  const size_t n = static_cast<size_t>(width) * height;
  s.values.resize(n);
  if (binary) {
    in.get();  // single whitespace after maxval
    std::vector<unsigned char> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in.gcount()) != n) throw IoError("truncated graymap data");
    for (size_t i = 0; i < n; ++i) s.values[i] = raw[i] / static_cast<double>(maxval);
  } else {
    for (size_t i = 0; i < n; ++i) {
      const int v = next_pnm_int(in);
      if (v < 0 || v > maxval) throw IoError("graymap sample out of range");
      s.values[i] = v / static_cast<double>(maxval);
    }
  }
  return s;
}

Silhouette read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_pgm(in);
}

void write_pgm(const Silhouette& s, std::ostream& out, bool binary) {
  out << (binary ? "P5" : "P2") << "\n" << s.width << " " << s.height << "\n255\n";
  if (binary) {
    std::vector<unsigned char> raw(s.values.size());
    for (size_t i = 0; i < s.values.size(); ++i) {
      const double v = std::clamp(s.values[i], 0.0, 1.0);
      raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  } else {
    for (int y = 0; y < s.height; ++y) {
      for (int x = 0; x < s.width; ++x) {
        const double v = std::clamp(s.at(x, y), 0.0, 1.0);
        out << std::lround(v * 255.0) << (x + 1 == s.width ? "\n" : " ");
      }
    }
  }
  if (!out) throw IoError("graymap write failed");
}

void write_pgm_file(const Silhouette& s, const std::string& path, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_pgm(s, out, binary);
}

void register_silhouette_decoder(SilhouetteDecoder decoder) {
  decoder_registry().push_back(std::move(decoder));
}

Silhouette load_silhouette(const std::string& path) {
  for (const auto& decoder : decoder_registry()) {
    if (auto s = decoder(path)) return std::move(*s);
  }
  return read_pgm_file(path);
}

}  // namespace projmatch
