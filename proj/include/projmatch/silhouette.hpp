#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "projmatch/errors.hpp"

namespace projmatch {

/// Real-valued occupancy image in [0,1]; 1 = inside the object.
/// Row-major storage, pixel (x,y) at values[y*width + x].
struct Silhouette {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
  double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }

  static Silhouette filled(int width, int height, double value);
};

/// Bilinear interpolation with pixel centers at (a+0.5, b+0.5). Pixel
/// reads are clamped to the image border, so a query on the border reads
/// the nearest pixel row/column at full weight; queries outside
/// [0,W]x[0,H] return 0.
double interp(const Silhouette& s, double x, double y);

/// Number of pixels with value >= 0.999, in pixel^2 units. The tolerance
/// survives 8-bit quantization while excluding antialiased borders.
double area(const Silhouette& s);

// --- portable-graymap I/O (P2/P5, 8-bit, value = byte/255) ---

Silhouette read_pgm(std::istream& in);
Silhouette read_pgm_file(const std::string& path);
void write_pgm(const Silhouette& s, std::ostream& out, bool binary = true);
void write_pgm_file(const Silhouette& s, const std::string& path, bool binary = true);

/// Hook for attaching alternative image decoders. load_silhouette tries
/// registered decoders in order and falls back to the PGM reader; a
/// decoder returns nullopt to pass. Register at startup; the registry is
/// not synchronized.
using SilhouetteDecoder = std::function<std::optional<Silhouette>(const std::string& path)>;
void register_silhouette_decoder(SilhouetteDecoder decoder);
Silhouette load_silhouette(const std::string& path);

}  // namespace projmatch
