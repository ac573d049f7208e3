#include "craterrim/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace craterrim {

std::vector<Detection> remove_boundary_craters(const std::vector<Detection>& dets, Eigen::Index width,
                                               Eigen::Index height, double margin) {
  if (!(margin >= 0.0)) throw std::invalid_argument("boundary margin must be >= 0");
  const auto w = static_cast<double>(width);
  const auto h = static_cast<double>(height);
  std::vector<Detection> kept;
  for (const auto& d : dets) {
    const double r = d.radius_px;
    const double x = d.center.x(), y = d.center.y();
    if (x - r >= margin && x + r <= w - margin && y - r >= margin && y + r <= h - margin) kept.push_back(d);
  }
  return kept;
}

std::vector<Detection> nms(const std::vector<Detection>& dets, double threshold, OverlapMeasure measure) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("NMS threshold must be in (0, 1)");
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Detection& da = dets[a];
    const Detection& db = dets[b];
    if (da.confidence != db.confidence) return da.confidence > db.confidence;
    if (da.radius_px != db.radius_px) return da.radius_px > db.radius_px;
    return id_less(da.id, db.id);
  });

  std::vector<bool> removed(dets.size(), false);
  std::vector<bool> kept(dets.size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t top = order[i];
    if (removed[top]) continue;
    kept[top] = true;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const std::size_t other = order[j];
      if (!removed[other] && overlap(dets[top], dets[other], measure) > threshold) removed[other] = true;
    }
  }
  std::vector<Detection> out;
  for (std::size_t i = 0; i < dets.size(); ++i)
    if (kept[i]) out.push_back(dets[i]);
  return out;
}

GeoPosition pixel_to_geo(const PixelPoint& center, double radius_px, const GeoReference& geo) {
  GeoPosition g;
  g.lat_deg = geo.origin_lat_deg - rad2deg(center.y() * geo.resolution_m / geo.body_radius_m);
  if (!(std::abs(g.lat_deg) < 90.0)) throw std::domain_error("converted latitude reaches the pole");
  g.lon_deg = geo.origin_lon_deg +
              rad2deg(center.x() * geo.resolution_m / (geo.body_radius_m * std::cos(deg2rad(g.lat_deg))));
  g.diameter_km = 2.0 * radius_px * geo.resolution_m / 1000.0;
  return g;
}

GeoPosition pixel_to_geo(const Detection& det, const GeoReference& geo) {
  return pixel_to_geo(det.center, det.radius_px, geo);
}

PixelCircle geo_to_pixel(double lon_deg, double lat_deg, double diameter_km, const GeoReference& geo) {
  if (!(std::abs(lat_deg) < 90.0)) throw std::domain_error("latitude must be inside (-90, 90)");
  PixelCircle c;
  c.center.y() = deg2rad(geo.origin_lat_deg - lat_deg) * geo.body_radius_m / geo.resolution_m;
  c.center.x() = deg2rad(lon_deg - geo.origin_lon_deg) * geo.body_radius_m * std::cos(deg2rad(lat_deg)) /
                 geo.resolution_m;
  c.radius_px = diameter_km * 1000.0 / (2.0 * geo.resolution_m);
  return c;
}

}  // namespace craterrim
