#ifndef CRATERRIM_POSTPROC_HPP
#define CRATERRIM_POSTPROC_HPP

#include "craterrim/detection.hpp"

#include <vector>

namespace craterrim {

inline constexpr double kDefaultBoundaryMargin = 15.0;
inline constexpr double kDefaultNmsThreshold = 0.4;

/// Keeps detections whose whole disk lies at least `margin` px inside every
/// tile edge.
std::vector<Detection> remove_boundary_craters(const std::vector<Detection>& dets, Eigen::Index width,
                                               Eigen::Index height, double margin = kDefaultBoundaryMargin);

/// Greedy NMS: highest confidence first (then larger radius, then smaller
/// id); drops every remaining detection whose overlap with a kept one
/// exceeds `threshold`. Survivors keep their input order.
std::vector<Detection> nms(const std::vector<Detection>& dets, double threshold = kDefaultNmsThreshold,
                           OverlapMeasure measure = OverlapMeasure::Disk);

struct GeoPosition {
  double lon_deg = 0.0;
  double lat_deg = 0.0;
  double diameter_km = 0.0;
};

/// Local equirectangular conversion about the tile origin.
GeoPosition pixel_to_geo(const PixelPoint& center, double radius_px, const GeoReference& geo);
GeoPosition pixel_to_geo(const Detection& det, const GeoReference& geo);

struct PixelCircle {
  PixelPoint center = PixelPoint::Zero();
  double radius_px = 0.0;
};

/// Inverse of pixel_to_geo.
PixelCircle geo_to_pixel(double lon_deg, double lat_deg, double diameter_km, const GeoReference& geo);

}  // namespace craterrim

#endif  // CRATERRIM_POSTPROC_HPP
