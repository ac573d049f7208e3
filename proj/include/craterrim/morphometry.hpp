#ifndef CRATERRIM_MORPHOMETRY_HPP
#define CRATERRIM_MORPHOMETRY_HPP

#include "craterrim/geometry.hpp"
#include "craterrim/raster.hpp"
#include "craterrim/rim_trace.hpp"

#include <optional>
#include <utility>

namespace craterrim {

struct CraterMorphometry {
  double avg_diameter_m = 0.0;
  double min_diameter_m = 0.0;
  double max_diameter_m = 0.0;
  /// Missing when no antipodal segment could be sampled.
  std::optional<double> avg_depth_m;
  std::optional<double> min_depth_m;
  std::optional<double> max_depth_m;
  /// min depth / max depth; missing when max depth <= 0.
  std::optional<double> depth_ratio;
  std::optional<double> depth_diameter_ratio;
  double circularity = 0.0;
  double rectangle_factor = 0.0;
  double sphericity = 0.0;
  double posture_ratio = 0.0;
  double posture_angle_deg = 0.0;
  double fallback_fraction = 0.0;
  /// Some rim point lies below the floor minimum (negative depth).
  bool inverted_topography = false;
  bool centroid_outside = false;
};

/// Index of the polygon azimuth equal to theta (throws if theta is off-grid),
/// and of the azimuth nearest theta + 180.
std::size_t azimuth_index(const RimPolygon& rim, double theta_deg);
std::size_t antipode_index(const RimPolygon& rim, std::size_t k);

/// Rim distance from the crater centre, in pixels.
double rim_radius(const RimPolygon& rim, std::size_t k);

/// (r(theta) + r(theta + 180)) * resolution.
double diameter_at(const RimPolygon& rim, double theta_deg, double resolution_m);

struct DepthPair {
  double depth_a = 0.0;
  double depth_b = 0.0;
};

/// Depths of the rim points at theta and theta + 180 below the lowest point
/// of the segment joining them (1 px sampling). Negative values are kept.
DepthPair depth_at(const DemRaster& dem, const RimPolygon& rim, double theta_deg);

struct AreaPerimeter {
  double area_m2 = 0.0;
  double perimeter_m = 0.0;
};
AreaPerimeter polygon_area_perimeter(const RimPolygon& rim, double resolution_m);

/// 4 pi A / P^2.
double circularity(double area, double perimeter);

/// Minimum-area bounding rectangle in metres.
OrientedRectangle<double> min_bounding_rectangle(const RimPolygon& rim, double resolution_m);

double rectangle_factor(double area, double rect_area);

struct Sphericity {
  double value = 0.0;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  bool centroid_outside = false;
};
/// Nearest over farthest vertex distance from the polygon centroid.
Sphericity sphericity(const RimPolygon& rim);

struct Posture {
  double ratio = 0.0;
  double angle_deg = 0.0;
};
Posture posture(const RimPolygon& rim);

CraterMorphometry compute_morphometry(const DemRaster& dem, const RimPolygon& rim);

}  // namespace craterrim

#endif  // CRATERRIM_MORPHOMETRY_HPP
