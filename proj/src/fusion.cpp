#include "craterrim/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace craterrim {

std::vector<Detection> filter_pseudo_labels(const std::vector<Detection>& dets, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("pseudo-label threshold must be in [0, 1]");
  std::vector<Detection> out;
  std::copy_if(dets.begin(), dets.end(), std::back_inserter(out),
               [tau](const Detection& d) { return d.confidence >= tau; });
  return out;
}

SetMatching match_detection_sets(const std::vector<Detection>& a, const std::vector<Detection>& b,
                                 double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("match threshold must be in (0, 1)");
  struct Candidate {
    double iou;
    std::size_t i, j;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double iou = disk_iou(a[i].center, a[i].radius_px, b[j].center, b[j].radius_px);
      if (iou > threshold) cands.push_back({iou, i, j});
    }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.iou != y.iou) return x.iou > y.iou;
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });

  SetMatching m;
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  for (const auto& c : cands) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = true;
    m.pairs.emplace_back(c.i, c.j);
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!used_a[i]) m.only_a.push_back(i);
  for (std::size_t j = 0; j < b.size(); ++j)
    if (!used_b[j]) m.only_b.push_back(j);
  return m;
}

namespace {

/// Radius of a polygon about `center`, linearly interpolated in azimuth.
class PolarResampler {
 public:
  PolarResampler(const RimPolygon& poly, const PixelPoint& center) {
    samples_.reserve(poly.points.size());
    for (const auto& p : poly.points) {
      const Eigen::Vector2d d = p.position - center;
      double phi = rad2deg(std::atan2(d.y(), d.x()));
      if (phi < 0.0) phi += 360.0;
      samples_.push_back({phi, d.norm()});
    }
    std::sort(samples_.begin(), samples_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }

  double radius_at(double theta) const {
    const auto n = samples_.size();
    auto it = std::lower_bound(samples_.begin(), samples_.end(), theta,
                               [](const auto& s, double t) { return s.first < t; });
    const auto& hi = it == samples_.end() ? samples_.front() : *it;
    const auto& lo = it == samples_.begin() ? samples_[n - 1] : *(it - 1);
    double span = hi.first - lo.first;
    double off = theta - lo.first;
    if (span <= 0.0) span += 360.0;
    if (off < 0.0) off += 360.0;
    if (span == 0.0) return lo.second;
    const double t = off / span;
    return (1.0 - t) * lo.second + t * hi.second;
  }

 private:
  std::vector<std::pair<double, double>> samples_;
};

}  // namespace

RimPolygon average_shapes(const RimPolygon& a, const RimPolygon& b) {
  if (a.theta_step_deg != b.theta_step_deg) throw std::invalid_argument("average_shapes: theta step mismatch");
  if (a.points.empty() || b.points.empty()) throw std::invalid_argument("average_shapes: empty polygon");
  const double reach = 1.6 * std::max(a.crater.radius_px, b.crater.radius_px);
  if ((a.crater.center - b.crater.center).norm() > reach)
    throw std::invalid_argument("average_shapes: centres too far apart");

  const PixelPoint center = 0.5 * (a.crater.center + b.crater.center);
  const PolarResampler ra(a, center);
  const PolarResampler rb(b, center);
  const int n = azimuth_count(a.theta_step_deg);

  RimPolygon out;
  out.crater = a.crater;
  out.crater.center = center;
  out.crater.radius_px = 0.5 * (a.crater.radius_px + b.crater.radius_px);
  out.theta_step_deg = a.theta_step_deg;
  out.l_step = a.l_step;
  for (int k = 0; k < n; ++k) {
    const double theta = k * a.theta_step_deg;
    RimPoint p;
    p.azimuth_deg = theta;
    p.radial_distance = 0.5 * (ra.radius_at(theta) + rb.radius_at(theta));
    p.position = center + p.radial_distance * ray_direction(theta);
    // Fallback only where neither input found an elevation rim.
    const bool fa = a.points.size() == static_cast<std::size_t>(n) &&
                    a.points[static_cast<std::size_t>(k)].source == RimSource::CircularFallback;
    const bool fb = b.points.size() == static_cast<std::size_t>(n) &&
                    b.points[static_cast<std::size_t>(k)].source == RimSource::CircularFallback;
    p.source = fa && fb ? RimSource::CircularFallback : RimSource::Elevation;
    out.points.push_back(p);
  }
  return out;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Pair: return "pair";
    case Provenance::OnlyA: return "only_a";
    case Provenance::OnlyB: return "only_b";
  }
  return "pair";
}

std::vector<FusedDetection> fuse_detections(const std::vector<Detection>& a, const std::vector<Detection>& b,
                                            double threshold) {
  SetMatching m = match_detection_sets(a, b, threshold);
  std::sort(m.pairs.begin(), m.pairs.end());
  std::vector<FusedDetection> out;
  out.reserve(m.pairs.size() + m.only_a.size() + m.only_b.size());
  for (const auto& [i, j] : m.pairs) {
    const Detection& da = a[i];
    const Detection& db = b[j];
    Detection f = da;
    f.center = 0.5 * (da.center + db.center);
    f.radius_px = 0.5 * (da.radius_px + db.radius_px);
    f.confidence = 0.5 * (da.confidence + db.confidence);
    if (da.rim && db.rim) {
      f.rim = average_shapes(*da.rim, *db.rim);
      f.rim->crater.id = f.id;
    } else if (!da.rim && db.rim) {
      f.rim = db.rim;
    }
    out.push_back({std::move(f), Provenance::Pair});
  }
  for (std::size_t i : m.only_a) out.push_back({a[i], Provenance::OnlyA});
  for (std::size_t j : m.only_b) out.push_back({b[j], Provenance::OnlyB});
  return out;
}

}  // namespace craterrim
