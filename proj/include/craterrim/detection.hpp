#ifndef CRATERRIM_DETECTION_HPP
#define CRATERRIM_DETECTION_HPP

#include "craterrim/raster.hpp"
#include "craterrim/rim_trace.hpp"

#include <optional>
#include <string>

namespace craterrim {

/// Crater hypothesis from a detector or from rim extraction.
struct Detection {
  std::string id;
  std::string tile_id;
  PixelPoint center = PixelPoint::Zero();
  double radius_px = 0.0;
  double confidence = 1.0;
  std::optional<RimPolygon> rim;
};

void validate(const Detection& d);

/// Intersection-over-union of two disks, closed form.
double disk_iou(const PixelPoint& c1, double r1, const PixelPoint& c2, double r2);

/// IoU of two rim polygons, estimated on a 4x4-supersampled pixel grid.
double polygon_iou(const RimPolygon& a, const RimPolygon& b);

enum class OverlapMeasure { Disk, Polygon };

/// Disk IoU, or polygon IoU when requested and both detections carry rims.
double overlap(const Detection& a, const Detection& b, OverlapMeasure measure = OverlapMeasure::Disk);

/// Orders ids numerically when both are integers, otherwise lexically.
bool id_less(const std::string& a, const std::string& b);

}  // namespace craterrim

#endif  // CRATERRIM_DETECTION_HPP
