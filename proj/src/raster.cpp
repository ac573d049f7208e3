#include "craterrim/raster.hpp"

#include <algorithm>

namespace craterrim {

SlopeRaster compute_slope(const DemRaster& dem) {
  const Eigen::Index w = dem.width();
  const Eigen::Index h = dem.height();
  const auto& z = dem.values;
  const double scale = 8.0 * dem.resolution();

  SlopeRaster out;
  out.geo = dem.geo;
  out.degrees = Grid<double>::Zero(h, w);
  out.missing = BinaryMask::Constant(h, w, false);

  auto at = [&](Eigen::Index y, Eigen::Index x) {
    return z(std::clamp<Eigen::Index>(y, 0, h - 1), std::clamp<Eigen::Index>(x, 0, w - 1));
  };

  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      const double a = at(y - 1, x - 1), b = at(y - 1, x), c = at(y - 1, x + 1);
      const double d = at(y, x - 1), e = at(y, x), f = at(y, x + 1);
      const double g = at(y + 1, x - 1), hh = at(y + 1, x), i = at(y + 1, x + 1);
      const double gx = ((c + 2.0 * f + i) - (a + 2.0 * d + g)) / scale;
      const double gy = ((g + 2.0 * hh + i) - (a + 2.0 * b + c)) / scale;
      if (std::isnan(gx) || std::isnan(gy) || std::isnan(e)) {
        out.missing(y, x) = true;
        continue;
      }
      out.degrees(y, x) = rad2deg(std::atan(std::sqrt(gx * gx + gy * gy)));
    }
  }
  return out;
}

}  // namespace craterrim
