#ifndef CRATERRIM_CRATER_HPP
#define CRATERRIM_CRATER_HPP

#include "craterrim/raster.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace craterrim {

/// Catalog entry: centre and radius in pixels plus optional catalog values.
struct CraterRecord {
  std::string id;
  PixelPoint center = PixelPoint::Zero();
  double radius_px = 0.0;
  std::optional<double> lon_deg;
  std::optional<double> lat_deg;
  std::optional<double> diameter_km;
};

inline void validate(const CraterRecord& c) {
  if (!(c.radius_px > 0.0) || !std::isfinite(c.radius_px))
    throw std::invalid_argument("crater '" + c.id + "': radius must be positive");
  if (!c.center.allFinite()) throw std::invalid_argument("crater '" + c.id + "': centre must be finite");
}

}  // namespace craterrim

#endif  // CRATERRIM_CRATER_HPP
