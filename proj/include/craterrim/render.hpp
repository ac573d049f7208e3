#ifndef CRATERRIM_RENDER_HPP
#define CRATERRIM_RENDER_HPP

#include "craterrim/raster.hpp"
#include "craterrim/rim_trace.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace craterrim {

struct RgbImage {
  Eigen::Index width = 0;
  Eigen::Index height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB

  std::array<std::uint8_t, 3> at(Eigen::Index x, Eigen::Index y) const {
    const auto i = static_cast<std::size_t>((y * width + x) * 3);
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }
  void set(Eigen::Index x, Eigen::Index y, std::array<std::uint8_t, 3> c) {
    const auto i = static_cast<std::size_t>((y * width + x) * 3);
    pixels[i] = c[0];
    pixels[i + 1] = c[1];
    pixels[i + 2] = c[2];
  }
};

inline constexpr std::array<std::uint8_t, 3> kRimColor = {255, 0, 0};

/// Min-max stretched grayscale DEM (nodata black) with each rim drawn as a
/// closed red polyline.
RgbImage render_overlay(const DemRaster& dem, const std::vector<RimPolygon>& rims);

void write_png(const std::filesystem::path& path, const RgbImage& image);

}  // namespace craterrim

#endif  // CRATERRIM_RENDER_HPP
