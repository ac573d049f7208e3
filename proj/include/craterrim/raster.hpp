#ifndef CRATERRIM_RASTER_HPP
#define CRATERRIM_RASTER_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace craterrim {

/// Row-major grid; rows are image y, columns are image x.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Foreground/background per pixel.
using BinaryMask = Grid<bool>;

/// Pixel coordinate (x = column, y = row), possibly fractional.
using PixelPoint = Eigen::Vector2d;

inline constexpr double kMoonRadiusMeters = 1737400.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

class RasterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeoReference {
  double resolution_m = 100.0;
  double origin_lon_deg = 0.0;
  double origin_lat_deg = 0.0;
  double body_radius_m = kMoonRadiusMeters;
};

/// Elevation-style raster. Missing cells are stored as NaN in memory; the
/// on-disk sentinel is kept in `nodata` so writers can restore it.
template <typename Scalar>
struct Raster {
  Grid<Scalar> values;
  GeoReference geo;
  std::optional<Scalar> nodata;

  Raster() = default;
  Raster(Grid<Scalar> v, GeoReference g, std::optional<Scalar> nd = std::nullopt)
      : values(std::move(v)), geo(g), nodata(nd) {
    validate();
  }

  Eigen::Index width() const { return values.cols(); }
  Eigen::Index height() const { return values.rows(); }
  double resolution() const { return geo.resolution_m; }

  bool contains(const PixelPoint& p) const {
    return p.x() >= 0.0 && p.y() >= 0.0 && p.x() <= static_cast<double>(width() - 1) &&
           p.y() <= static_cast<double>(height() - 1);
  }

  bool is_missing(Eigen::Index x, Eigen::Index y) const { return std::isnan(values(y, x)); }

  void validate() const {
    if (values.rows() <= 0 || values.cols() <= 0) throw RasterError("raster must be non-empty");
    if (!(geo.resolution_m > 0.0) || !std::isfinite(geo.resolution_m))
      throw RasterError("raster resolution must be positive");
    if (values.isInf().any()) throw RasterError("raster contains infinite values");
  }
};

using DemRaster = Raster<double>;

/// Slope in degrees, [0, 90]. `missing` marks cells whose 3x3 neighbourhood
/// touched nodata; those cells carry slope 0.
struct SlopeRaster {
  Grid<double> degrees;
  BinaryMask missing;
  GeoReference geo;

  Eigen::Index width() const { return degrees.cols(); }
  Eigen::Index height() const { return degrees.rows(); }
};

/// Integer pixel offset of a window inside its parent raster.
struct WindowOffset {
  Eigen::Index x = 0;
  Eigen::Index y = 0;
};

template <typename Scalar>
struct Window {
  Grid<Scalar> values;
  WindowOffset offset;
};

/// Bounds of a window centred on `center` with the given half extent,
/// clamped to a width x height raster. Both corners are inclusive.
struct WindowBounds {
  Eigen::Index x0, y0, x1, y1;
  Eigen::Index cols() const { return x1 - x0 + 1; }
  Eigen::Index rows() const { return y1 - y0 + 1; }
};

inline WindowBounds window_bounds(Eigen::Index width, Eigen::Index height,
                                  const PixelPoint& center, double half_extent) {
  if (!(half_extent > 0.0)) throw RasterError("window half extent must be positive");
  const double lo_x = std::floor(center.x() - half_extent);
  const double lo_y = std::floor(center.y() - half_extent);
  const double hi_x = std::ceil(center.x() + half_extent);
  const double hi_y = std::ceil(center.y() + half_extent);
  if (hi_x < 0.0 || hi_y < 0.0 || lo_x > static_cast<double>(width - 1) ||
      lo_y > static_cast<double>(height - 1))
    throw RasterError("window lies entirely outside the raster");
  WindowBounds b;
  b.x0 = static_cast<Eigen::Index>(std::max(lo_x, 0.0));
  b.y0 = static_cast<Eigen::Index>(std::max(lo_y, 0.0));
  b.x1 = static_cast<Eigen::Index>(std::min(hi_x, static_cast<double>(width - 1)));
  b.y1 = static_cast<Eigen::Index>(std::min(hi_y, static_cast<double>(height - 1)));
  return b;
}

/// Crops [center - half_extent, center + half_extent] (inclusive, clamped).
template <typename Derived>
Window<typename Derived::Scalar> crop_window(const Eigen::DenseBase<Derived>& grid,
                                             const PixelPoint& center, double half_extent) {
  const WindowBounds b = window_bounds(grid.cols(), grid.rows(), center, half_extent);
  Window<typename Derived::Scalar> w;
  w.values = grid.derived().block(b.y0, b.x0, b.rows(), b.cols());
  w.offset = {b.x0, b.y0};
  return w;
}

/// Bilinear sample. Exact at lattice points; NaN when a contributing cell is
/// missing. Throws std::out_of_range outside [0, w-1] x [0, h-1].
template <typename Derived>
double sample_bilinear(const Eigen::DenseBase<Derived>& grid, const PixelPoint& p) {
  const double x = p.x();
  const double y = p.y();
  const auto w = grid.cols();
  const auto h = grid.rows();
  if (!(x >= 0.0 && y >= 0.0 && x <= static_cast<double>(w - 1) && y <= static_cast<double>(h - 1)))
    throw std::out_of_range("sample point outside raster");
  const auto x0 = static_cast<Eigen::Index>(std::floor(x));
  const auto y0 = static_cast<Eigen::Index>(std::floor(y));
  const double fx = x - static_cast<double>(x0);
  const double fy = y - static_cast<double>(y0);
  const auto& g = grid.derived();
  // Zero-weight neighbours are skipped so a NaN next door does not leak in.
  double top = static_cast<double>(g(y0, x0));
  if (fx > 0.0) top = (1.0 - fx) * top + fx * static_cast<double>(g(y0, x0 + 1));
  if (fy == 0.0) return top;
  double bottom = static_cast<double>(g(y0 + 1, x0));
  if (fx > 0.0) bottom = (1.0 - fx) * bottom + fx * static_cast<double>(g(y0 + 1, x0 + 1));
  return (1.0 - fy) * top + fy * bottom;
}

inline double sample_elevation(const DemRaster& dem, const PixelPoint& p) {
  return sample_bilinear(dem.values, p);
}

/// Horn 3x3 slope in degrees with edge-replicated borders.
SlopeRaster compute_slope(const DemRaster& dem);

}  // namespace craterrim

#endif  // CRATERRIM_RASTER_HPP
