#include "craterrim/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "craterrim/geometry.hpp"

namespace craterrim {

void validate(const Detection& d) {
  if (!(d.radius_px > 0.0)) throw std::invalid_argument("detection '" + d.id + "': radius must be positive");
  if (!(d.confidence >= 0.0 && d.confidence <= 1.0))
    throw std::invalid_argument("detection '" + d.id + "': confidence must be in [0, 1]");
  if (!d.center.allFinite()) throw std::invalid_argument("detection '" + d.id + "': centre must be finite");
}

double disk_iou(const PixelPoint& c1, double r1, const PixelPoint& c2, double r2) {
  const double d = (c1 - c2).norm();
  const double a1 = kPi * r1 * r1;
  const double a2 = kPi * r2 * r2;
  double inter = 0.0;
  if (d >= r1 + r2) {
    return 0.0;
  } else if (d <= std::abs(r1 - r2)) {
    inter = std::min(a1, a2);
  } else {
    const double c1a = std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0);
    const double c2a = std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0);
    const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    inter = r1 * r1 * std::acos(c1a) + r2 * r2 * std::acos(c2a) - 0.5 * std::sqrt(std::max(k, 0.0));
  }
  return inter / (a1 + a2 - inter);
}

double polygon_iou(const RimPolygon& a, const RimPolygon& b) {
  const Eigen::Matrix2Xd va = a.vertices();
  const Eigen::Matrix2Xd vb = b.vertices();
  const Eigen::Vector2d lo = va.rowwise().minCoeff().cwiseMin(vb.rowwise().minCoeff());
  const Eigen::Vector2d hi = va.rowwise().maxCoeff().cwiseMax(vb.rowwise().maxCoeff());
  constexpr int kSub = 4;
  std::size_t in_a = 0, in_b = 0, both = 0;
  for (double y = std::floor(lo.y()); y <= std::ceil(hi.y()); y += 1.0) {
    for (double x = std::floor(lo.x()); x <= std::ceil(hi.x()); x += 1.0) {
      for (int sy = 0; sy < kSub; ++sy) {
        for (int sx = 0; sx < kSub; ++sx) {
          const Eigen::Vector2d p(x + (sx + 0.5) / kSub, y + (sy + 0.5) / kSub);
          const bool ia = contains_point(va, p);
          const bool ib = contains_point(vb, p);
          in_a += ia;
          in_b += ib;
          both += ia && ib;
        }
      }
    }
  }
  const std::size_t uni = in_a + in_b - both;
  return uni == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(uni);
}

double overlap(const Detection& a, const Detection& b, OverlapMeasure measure) {
  if (measure == OverlapMeasure::Polygon && a.rim && b.rim) return polygon_iou(*a.rim, *b.rim);
  return disk_iou(a.center, a.radius_px, b.center, b.radius_px);
}

bool id_less(const std::string& a, const std::string& b) {
  auto is_int = [](const std::string& s) {
    return !s.empty() && s.size() < 19 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (is_int(a) && is_int(b)) return std::stoll(a) < std::stoll(b);
  return a < b;
}

}  // namespace craterrim
