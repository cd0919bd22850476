#include "braille/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "braille/errors.hpp"

namespace braille {

RenderConfig RenderConfig::for_layout(const LayoutConfig& layout) {
  RenderConfig cfg;
  cfg.page_width = layout.page_width;
  cfg.page_height = layout.page_height();
  return cfg;
}

void RenderConfig::validate() const {
  if (!(dpmm > 0)) throw ConfigInvalid("render config: dpmm must be positive");
  if (!(dot_radius_mm > 0)) throw ConfigInvalid("render config: dot radius must be positive");
  if (page_width <= Microns{} || page_height <= Microns{})
    throw ConfigInvalid("render config: page size must be positive");
}

GrayImage rasterize(const EmbossedPage& page, const RenderConfig& cfg) {
  cfg.validate();
  GrayImage img;
  img.width = static_cast<std::size_t>(std::lround(cfg.page_width.mm() * cfg.dpmm));
  img.height = static_cast<std::size_t>(std::lround(cfg.page_height.mm() * cfg.dpmm));
  img.pixels.assign(img.width * img.height, 255);

  const double r = cfg.dot_radius_mm * cfg.dpmm;
  for (const PlacedDot& d : page.dots) {
    const double cx = d.pos.x.mm() * cfg.dpmm;
    const double cy = d.pos.y.mm() * cfg.dpmm;
    const auto y0 = static_cast<long>(std::max(0.0, std::floor(cy - r)));
    const auto y1 = static_cast<long>(std::min<double>(static_cast<double>(img.height) - 1, std::ceil(cy + r)));
    const auto x0 = static_cast<long>(std::max(0.0, std::floor(cx - r)));
    const auto x1 = static_cast<long>(std::min<double>(static_cast<double>(img.width) - 1, std::ceil(cx + r)));
    for (long y = y0; y <= y1; ++y)
      for (long x = x0; x <= x1; ++x) {
        const double dx = static_cast<double>(x) - cx;
        const double dy = static_cast<double>(y) - cy;
        if (dx * dx + dy * dy <= r * r) img.pixels[static_cast<std::size_t>(y) * img.width + static_cast<std::size_t>(x)] = 0;
      }
  }
  return img;
}

std::string to_pgm(const GrayImage& image) {
  std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
  return out;
}

std::string render_pgm(const EmbossedPage& page, const RenderConfig& cfg) { return to_pgm(rasterize(page, cfg)); }

std::string render_svg(const EmbossedPage& page, const RenderConfig& cfg) {
  cfg.validate();
  const std::string w = format_mm(cfg.page_width);
  const std::string h = format_mm(cfg.page_height);
  const std::string r = format_mm(Microns::from_mm(cfg.dot_radius_mm));
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "mm\" height=\"" << h
      << "mm\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
      << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  for (const PlacedDot& d : page.dots)
    out << "<circle class=\"" << method_name(d.method) << "\" cx=\"" << format_mm(d.pos.x) << "\" cy=\""
        << format_mm(d.pos.y) << "\" r=\"" << r << "\" fill=\"black\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace braille
