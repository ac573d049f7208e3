#include "craterrim/morphometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace craterrim {

std::size_t azimuth_index(const RimPolygon& rim, double theta_deg) {
  const auto n = static_cast<long>(rim.points.size());
  if (n == 0) throw std::invalid_argument("empty rim polygon");
  const double k = std::round(theta_deg / rim.theta_step_deg);
  if (std::abs(k * rim.theta_step_deg - theta_deg) > 1e-6)
    throw std::invalid_argument("azimuth is not on the polygon grid");
  return static_cast<std::size_t>(((static_cast<long>(k) % n) + n) % n);
}

std::size_t antipode_index(const RimPolygon& rim, std::size_t k) {
  const auto n = static_cast<long>(rim.points.size());
  const double theta = rim.points[k].azimuth_deg + 180.0;
  const auto j = static_cast<long>(std::round(theta / rim.theta_step_deg));
  return static_cast<std::size_t>(((j % n) + n) % n);
}

double rim_radius(const RimPolygon& rim, std::size_t k) {
  return (rim.points[k].position - rim.crater.center).norm();
}

double diameter_at(const RimPolygon& rim, double theta_deg, double resolution_m) {
  const std::size_t k = azimuth_index(rim, theta_deg);
  return (rim_radius(rim, k) + rim_radius(rim, antipode_index(rim, k))) * resolution_m;
}

namespace {

DepthPair depth_between(const DemRaster& dem, const PixelPoint& a, const PixelPoint& b) {
  if (!dem.contains(a) || !dem.contains(b)) throw std::out_of_range("depth segment endpoint outside raster");
  const double ea = sample_elevation(dem, a);
  const double eb = sample_elevation(dem, b);
  if (std::isnan(ea) || std::isnan(eb)) throw RasterError("depth segment endpoint on nodata");
  const double len = (b - a).norm();
  const Eigen::Vector2d dir = len > 0.0 ? Eigen::Vector2d((b - a) / len) : Eigen::Vector2d::Zero();
  double lowest = std::min(ea, eb);
  for (int t = 1; t < len; ++t) {
    const double e = sample_elevation(dem, a + t * dir);
    if (!std::isnan(e)) lowest = std::min(lowest, e);
  }
  return {ea - lowest, eb - lowest};
}

}  // namespace

DepthPair depth_at(const DemRaster& dem, const RimPolygon& rim, double theta_deg) {
  const std::size_t k = azimuth_index(rim, theta_deg);
  return depth_between(dem, rim.points[k].position, rim.points[antipode_index(rim, k)].position);
}

AreaPerimeter polygon_area_perimeter(const RimPolygon& rim, double resolution_m) {
  if (rim.points.size() < 3) throw std::invalid_argument("polygon needs at least 3 points");
  const Eigen::Matrix2Xd v = rim.vertices();
  return {std::abs(signed_area(v)) * resolution_m * resolution_m, perimeter(v) * resolution_m};
}

double circularity(double area, double perimeter) {
  if (!(perimeter > 0.0)) throw std::invalid_argument("circularity: perimeter must be positive");
  return 4.0 * kPi * area / (perimeter * perimeter);
}

OrientedRectangle<double> min_bounding_rectangle(const RimPolygon& rim, double resolution_m) {
  OrientedRectangle<double> r = min_area_rectangle(rim.vertices());
  r.width *= resolution_m;
  r.length *= resolution_m;
  return r;
}

double rectangle_factor(double area, double rect_area) {
  if (!(rect_area > 0.0)) throw std::invalid_argument("rectangle_factor: rectangle area must be positive");
  return area / rect_area;
}

Sphericity sphericity(const RimPolygon& rim) {
  if (rim.points.size() < 3) throw std::invalid_argument("polygon needs at least 3 points");
  const Eigen::Matrix2Xd v = rim.vertices();
  const Eigen::Vector2d c = centroid(v);
  const Eigen::VectorXd d = (v.colwise() - c).colwise().norm().transpose();
  Sphericity s;
  s.inner_radius = d.minCoeff();
  s.outer_radius = d.maxCoeff();
  s.value = s.outer_radius > 0.0 ? s.inner_radius / s.outer_radius : 0.0;
  s.centroid_outside = !contains_point(v, c);
  return s;
}

Posture posture(const RimPolygon& rim) {
  const OrientedRectangle<double> r = min_area_rectangle(rim.vertices());
  return {r.width / r.length, r.angle_deg};
}

CraterMorphometry compute_morphometry(const DemRaster& dem, const RimPolygon& rim) {
  const std::size_t n = rim.points.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 points");
  const double res = dem.resolution();
  CraterMorphometry m;

  // Each antipodal pair once when the azimuth count is even.
  const std::size_t pairs = n % 2 == 0 ? n / 2 : n;
  std::vector<double> diameters;
  std::vector<double> depths;
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t j = antipode_index(rim, k);
    diameters.push_back((rim_radius(rim, k) + rim_radius(rim, j)) * res);
    try {
      const DepthPair d = depth_between(dem, rim.points[k].position, rim.points[j].position);
      depths.push_back(d.depth_a);
      if (n % 2 == 0) depths.push_back(d.depth_b);
    } catch (const std::exception&) {
      // off-raster or nodata rim: the pair contributes no depth
    }
  }

  // Clamped so rounding cannot push the mean outside [min, max].
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return std::clamp(s / static_cast<double>(v.size()), *lo, *hi);
  };
  m.avg_diameter_m = mean(diameters);
  m.min_diameter_m = *std::min_element(diameters.begin(), diameters.end());
  m.max_diameter_m = *std::max_element(diameters.begin(), diameters.end());
  if (!depths.empty()) {
    m.avg_depth_m = mean(depths);
    m.min_depth_m = *std::min_element(depths.begin(), depths.end());
    m.max_depth_m = *std::max_element(depths.begin(), depths.end());
    if (*m.max_depth_m > 0.0) m.depth_ratio = *m.min_depth_m / *m.max_depth_m;
    if (m.avg_diameter_m > 0.0) m.depth_diameter_ratio = *m.avg_depth_m / m.avg_diameter_m;
    m.inverted_topography = *m.min_depth_m < 0.0;
  }

  const AreaPerimeter ap = polygon_area_perimeter(rim, res);
  m.circularity = circularity(ap.area_m2, ap.perimeter_m);
  const OrientedRectangle<double> rect = min_bounding_rectangle(rim, res);
  m.rectangle_factor = rectangle_factor(ap.area_m2, rect.area());
  const Sphericity s = sphericity(rim);
  m.sphericity = s.value;
  m.centroid_outside = s.centroid_outside;
  m.posture_ratio = rect.width / rect.length;
  m.posture_angle_deg = rect.angle_deg;
  m.fallback_fraction = rim.fallback_fraction();
  return m;
}

}  // namespace craterrim
