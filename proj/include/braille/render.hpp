#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "braille/layout.hpp"
#include "braille/machine.hpp"

namespace braille {

struct RenderConfig {
  Microns page_width = Microns::from_mm(245.0);
  Microns page_height = Microns::from_mm(250.0);
  double dpmm = 4.0;
  double dot_radius_mm = 0.75;

  static RenderConfig for_layout(const LayoutConfig& layout);
  void validate() const;
};

/// 8-bit grey raster, row-major, 255 = paper.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// Each dot is a filled black disk centred on pixel (x * dpmm, y * dpmm).
GrayImage rasterize(const EmbossedPage& page, const RenderConfig& cfg);

/// Binary P5 PGM.
std::string to_pgm(const GrayImage& image);
std::string render_pgm(const EmbossedPage& page, const RenderConfig& cfg);

/// One <circle> per dot, millimetre user units.
std::string render_svg(const EmbossedPage& page, const RenderConfig& cfg);

}  // namespace braille
