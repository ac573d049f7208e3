#include "craterrim/rim_trace.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace craterrim {

Eigen::Matrix2Xd RimPolygon::vertices() const {
  Eigen::Matrix2Xd v(2, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = points[i].position;
  return v;
}

double RimPolygon::fallback_fraction() const {
  if (points.empty()) return 0.0;
  std::size_t n = 0;
  for (const auto& p : points) n += p.source == RimSource::CircularFallback;
  return static_cast<double>(n) / static_cast<double>(points.size());
}

int azimuth_count(double theta_step_deg) {
  if (!(theta_step_deg > 0.0) || theta_step_deg > 360.0)
    throw std::invalid_argument("theta step must be in (0, 360]");
  const double n = std::round(360.0 / theta_step_deg);
  if (std::abs(n * theta_step_deg - 360.0) > 1e-9)
    throw std::invalid_argument("theta step must divide 360");
  return static_cast<int>(n);
}

bool ray_has_foreground(const RimRegionMask& mask, const PixelPoint& center, double theta_deg,
                        double from, double to) {
  // Grid traversal over every pixel cell the segment touches. Sampling at a
  // fixed step can slip between the diagonal neighbours of a 1 px skeleton.
  const Eigen::Vector2d dir = ray_direction(theta_deg);
  const Eigen::Vector2d a = center + from * dir;
  const double len = to - from;
  auto cell = [](double v) { return static_cast<Eigen::Index>(std::floor(v + 0.5)); };
  Eigen::Index x = cell(a.x()), y = cell(a.y());
  if (mask.foreground_at(x, y)) return true;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int sx = dir.x() > 1e-12 ? 1 : (dir.x() < -1e-12 ? -1 : 0);
  const int sy = dir.y() > 1e-12 ? 1 : (dir.y() < -1e-12 ? -1 : 0);
  const double dtx = sx != 0 ? 1.0 / std::abs(dir.x()) : kInf;
  const double dty = sy != 0 ? 1.0 / std::abs(dir.y()) : kInf;
  double tx = sx != 0 ? ((static_cast<double>(x) + 0.5 * sx) - a.x()) / dir.x() : kInf;
  double ty = sy != 0 ? ((static_cast<double>(y) + 0.5 * sy) - a.y()) / dir.y() : kInf;
  while (std::min(tx, ty) <= len) {
    if (tx < ty) {
      x += sx;
      tx += dtx;
    } else if (ty < tx) {
      y += sy;
      ty += dty;
    } else {
      // Through a corner: both side cells count as touched.
      if (mask.foreground_at(x + sx, y) || mask.foreground_at(x, y + sy)) return true;
      x += sx;
      y += sy;
      tx += dtx;
      ty += dty;
    }
    if (mask.foreground_at(x, y)) return true;
  }
  return false;
}

ElevationProfile elevation_profile(const DemRaster& dem, const PixelPoint& center, double theta_deg,
                                   double l_start, double l_end) {
  if (!(l_start < l_end)) throw std::invalid_argument("elevation_profile: l_start must be < l_end");
  const Eigen::Vector2d dir = ray_direction(theta_deg);
  ElevationProfile prof;
  auto push = [&](double l) {
    const PixelPoint p = center + l * dir;
    if (!dem.contains(p)) {
      prof.truncated = true;
      return false;
    }
    prof.samples.push_back({l, sample_elevation(dem, p)});
    return true;
  };
  bool ok = true;
  for (int k = 0; ok && l_start + k < l_end - 1e-9; ++k) ok = push(l_start + k);
  if (ok) push(l_end);
  if (prof.samples.empty()) throw std::out_of_range("elevation_profile: segment outside raster");
  return prof;
}

namespace {

RimPoint circular_point(const CraterRecord& crater, double theta_deg) {
  RimPoint p;
  p.azimuth_deg = theta_deg;
  p.radial_distance = crater.radius_px;
  p.position = crater.center + crater.radius_px * ray_direction(theta_deg);
  p.source = RimSource::CircularFallback;
  return p;
}

}  // namespace

RimPoint trace_rim_point(const DemRaster& dem, const RimRegionMask& mask, const CraterRecord& crater,
                         double theta_deg, double l_step) {
  const double r = crater.radius_px;
  if (!ray_has_foreground(mask, crater.center, theta_deg, 0.3 * r, 1.6 * r)) return circular_point(crater, theta_deg);

  double l_start = 0.5 * r;
  double l_end = r + 10.0;
  while (true) {
    if (l_end >= 1.6 * r) return circular_point(crater, theta_deg);

    ElevationProfile prof;
    try {
      prof = elevation_profile(dem, crater.center, theta_deg, l_start, l_end);
    } catch (const std::out_of_range&) {
      return circular_point(crater, theta_deg);
    }

    std::size_t best = 0;
    for (std::size_t i = 0; i < prof.samples.size(); ++i) {
      if (std::isnan(prof.samples[i].elevation)) return circular_point(crater, theta_deg);
      if (prof.samples[i].elevation > prof.samples[best].elevation) best = i;
    }
    // A maximum on the last sample (l_end, or the raster edge) may belong to
    // a peak further out.
    if (best + 1 < prof.samples.size()) {
      RimPoint p;
      p.azimuth_deg = theta_deg;
      p.radial_distance = prof.samples[best].l;
      p.position = crater.center + p.radial_distance * ray_direction(theta_deg);
      p.source = RimSource::Elevation;
      return p;
    }
    l_start += l_step;
    l_end += l_step;
  }
}

RimPolygon extract_rim(const DemRaster& dem, const SlopeRaster& slope, const CraterRecord& crater,
                       const TraceParams& params, RimRegionSteps* steps) {
  validate(crater);
  if (!(params.l_step > 0.0)) throw std::invalid_argument("l_step must be positive");
  const int n = azimuth_count(params.theta_step_deg);
  const RimRegionMask region = extract_rim_region(slope, crater, params.morph, steps);

  RimPolygon poly;
  poly.crater = crater;
  poly.theta_step_deg = params.theta_step_deg;
  poly.l_step = params.l_step;
  poly.points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    poly.points.push_back(trace_rim_point(dem, region, crater, k * params.theta_step_deg, params.l_step));
  return poly;
}

}  // namespace craterrim
