#include "craterrim/render.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include <png.h>

namespace craterrim {

namespace {

void draw_line(RgbImage& img, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double len = (b - a).norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(len * 2.0)));
  for (int s = 0; s <= steps; ++s) {
    const Eigen::Vector2d p = a + (b - a) * (static_cast<double>(s) / steps);
    const auto x = static_cast<Eigen::Index>(std::lround(p.x()));
    const auto y = static_cast<Eigen::Index>(std::lround(p.y()));
    if (x >= 0 && y >= 0 && x < img.width && y < img.height) img.set(x, y, kRimColor);
  }
}

}  // namespace

RgbImage render_overlay(const DemRaster& dem, const std::vector<RimPolygon>& rims) {
  RgbImage img;
  img.width = dem.width();
  img.height = dem.height();
  img.pixels.assign(static_cast<std::size_t>(img.width * img.height * 3), 0);

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index i = 0; i < dem.values.size(); ++i) {
    const double v = dem.values.data()[i];
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  for (Eigen::Index y = 0; y < img.height; ++y) {
    for (Eigen::Index x = 0; x < img.width; ++x) {
      const double v = dem.values(y, x);
      const auto g = std::isnan(v) ? std::uint8_t{0}
                                   : static_cast<std::uint8_t>(std::lround(255.0 * (v - lo) / span));
      img.set(x, y, {g, g, g});
    }
  }

  for (const auto& rim : rims) {
    const std::size_t n = rim.points.size();
    for (std::size_t i = 0; i < n; ++i) draw_line(img, rim.points[i].position, rim.points[(i + 1) % n].position);
  }
  return img;
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw std::runtime_error("cannot write '" + path.string() + "'");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("PNG encoding failed for '" + path.string() + "'");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width), static_cast<png_uint_32>(image.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (Eigen::Index y = 0; y < image.height; ++y)
    png_write_row(png, const_cast<png_bytep>(image.pixels.data() + y * image.width * 3));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace craterrim
