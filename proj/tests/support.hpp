// Shared fixtures and independent reference implementations for the tests.
// The oracles here deliberately avoid the library's own helpers.
#ifndef CRATERRIM_TESTS_SUPPORT_HPP
#define CRATERRIM_TESTS_SUPPORT_HPP

#include "craterrim/detection.hpp"
#include "craterrim/morphology.hpp"
#include "craterrim/raster.hpp"
#include "craterrim/rim_trace.hpp"
#include "craterrim/synth.hpp"

#include <cmath>
#include <deque>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace test {

using namespace craterrim;

inline GeoReference geo100() {
  GeoReference g;
  g.resolution_m = 100.0;
  return g;
}

inline DemRaster constant_dem(Eigen::Index w, Eigen::Index h, double v, double res = 100.0) {
  GeoReference g;
  g.resolution_m = res;
  return DemRaster(Grid<double>::Constant(h, w, v), g);
}

inline DemRaster dem_from(const std::function<double(double, double)>& f, Eigen::Index w, Eigen::Index h,
                          double res = 100.0) {
  Grid<double> v(h, w);
  for (Eigen::Index y = 0; y < h; ++y)
    for (Eigen::Index x = 0; x < w; ++x) v(y, x) = f(static_cast<double>(x), static_cast<double>(y));
  GeoReference g;
  g.resolution_m = res;
  return DemRaster(std::move(v), g);
}

inline CraterRecord crater_at(double x, double y, double r, std::string id = "c") {
  CraterRecord c;
  c.id = std::move(id);
  c.center = {x, y};
  c.radius_px = r;
  return c;
}

/// Polygon whose radius follows f(theta) about `center`.
inline RimPolygon polygon_from(const PixelPoint& center, const std::function<double(double)>& f,
                               double step = 2.0, double catalog_r = 0.0) {
  RimPolygon rim;
  rim.theta_step_deg = step;
  const int n = static_cast<int>(std::lround(360.0 / step));
  double mean = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = k * step;
    const double r = f(th);
    mean += r / n;
    RimPoint p;
    p.azimuth_deg = th;
    p.radial_distance = r;
    p.position = center + r * Eigen::Vector2d(std::cos(th * kPi / 180.0), std::sin(th * kPi / 180.0));
    p.source = RimSource::Elevation;
    rim.points.push_back(p);
  }
  rim.crater.id = "p";
  rim.crater.center = center;
  rim.crater.radius_px = catalog_r > 0.0 ? catalog_r : mean;
  return rim;
}

inline RimPolygon circle_polygon(const PixelPoint& center, double r, double step = 2.0) {
  return polygon_from(center, [r](double) { return r; }, step);
}

/// Polygon with arbitrary vertices (no star-shape assumption), for index tests.
inline RimPolygon polygon_of(const std::vector<PixelPoint>& pts) {
  RimPolygon rim;
  rim.theta_step_deg = 360.0 / static_cast<double>(pts.size());
  PixelPoint c = PixelPoint::Zero();
  for (const auto& p : pts) c += p / static_cast<double>(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    RimPoint p;
    p.azimuth_deg = k * rim.theta_step_deg;
    p.position = pts[k];
    p.radial_distance = (pts[k] - c).norm();
    rim.points.push_back(p);
  }
  rim.crater.center = c;
  rim.crater.radius_px = 1.0;
  return rim;
}

inline BinaryMask random_mask(std::mt19937_64& rng, Eigen::Index h, Eigen::Index w, double p) {
  std::bernoulli_distribution bit(p);
  BinaryMask m(h, w);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = bit(rng);
  return m;
}

inline Eigen::Index count(const BinaryMask& m) { return m.cast<Eigen::Index>().sum(); }

inline bool subset(const BinaryMask& a, const BinaryMask& b) { return !(a && !b).any(); }

inline bool equal(const BinaryMask& a, const BinaryMask& b) { return (a == b).all(); }

inline Detection det(std::string id, double x, double y, double r, double conf = 1.0) {
  Detection d;
  d.id = std::move(id);
  d.center = {x, y};
  d.radius_px = r;
  d.confidence = conf;
  return d;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("craterrim_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

namespace oracle {

/// Otsu by exhaustive search: each value's bin found by a linear scan of the
/// edges, each candidate split scored from scratch, comparisons exact.
struct OtsuAnswer {
  bool degenerate = false;
  double threshold = 0.0;
};

inline OtsuAnswer otsu(const Grid<double>& g) {
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (!std::isnan(g.data()[i])) vals.push_back(g.data()[i]);
  double lo = vals.front(), hi = vals.front();
  for (double v : vals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) return {true, lo};
  const int bins = 256;
  const double width = (hi - lo) / bins;
  std::vector<long long> hist(bins, 0);
  for (double v : vals) {
    int k = 0;
    while (k < bins - 1 && v > lo + (k + 1) * width) ++k;
    ++hist[static_cast<std::size_t>(k)];
  }
  // Between-class variance n0*n1*(mu0-mu1)^2, mu as exact rationals:
  // (s0/n0 - s1/n1)^2 * n0*n1 = (s0*n1 - s1*n0)^2 / (n0*n1).
  using W = __int128;
  int best = -1;
  W bn = 0, bd = 1;
  for (int t = 0; t < bins - 1; ++t) {
    long long n0 = 0, n1 = 0, s0 = 0, s1 = 0;
    for (int k = 0; k < bins; ++k) {
      if (k <= t) {
        n0 += hist[k];
        s0 += k * hist[k];
      } else {
        n1 += hist[k];
        s1 += k * hist[k];
      }
    }
    if (n0 == 0 || n1 == 0) continue;
    const W diff = static_cast<W>(s0) * n1 - static_cast<W>(s1) * n0;
    const W num = diff * diff;
    const W den = static_cast<W>(n0) * n1;
    // Small test windows keep these products far from overflow.
    if (best < 0 || num * bd > bn * den) {
      best = t;
      bn = num;
      bd = den;
    }
  }
  return {false, lo + (best + 1) * width};
}

/// 8-connected components by breadth-first flood fill; pixel lists.
inline std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> components(const BinaryMask& m) {
  std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> out;
  BinaryMask seen = BinaryMask::Constant(m.rows(), m.cols(), false);
  for (Eigen::Index y = 0; y < m.rows(); ++y) {
    for (Eigen::Index x = 0; x < m.cols(); ++x) {
      if (!m(y, x) || seen(y, x)) continue;
      std::deque<std::pair<Eigen::Index, Eigen::Index>> q{{y, x}};
      seen(y, x) = true;
      out.emplace_back();
      while (!q.empty()) {
        auto [cy, cx] = q.front();
        q.pop_front();
        out.back().emplace_back(cy, cx);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const Eigen::Index ny = cy + dy, nx = cx + dx;
            if (ny < 0 || nx < 0 || ny >= m.rows() || nx >= m.cols()) continue;
            if (m(ny, nx) && !seen(ny, nx)) {
              seen(ny, nx) = true;
              q.emplace_back(ny, nx);
            }
          }
      }
    }
  }
  return out;
}

/// Minimum rectangle area over orientations swept in `step_deg` increments.
inline double mbr_sweep_area(const std::vector<PixelPoint>& pts, double step_deg) {
  double best = std::numeric_limits<double>::infinity();
  for (double a = 0.0; a < 90.0; a += step_deg) {
    const double c = std::cos(a * kPi / 180.0), s = std::sin(a * kPi / 180.0);
    double u0 = 1e300, u1 = -1e300, v0 = 1e300, v1 = -1e300;
    for (const auto& p : pts) {
      const double u = c * p.x() + s * p.y(), v = -s * p.x() + c * p.y();
      u0 = std::min(u0, u);
      u1 = std::max(u1, u);
      v0 = std::min(v0, v);
      v1 = std::max(v1, v);
    }
    best = std::min(best, (u1 - u0) * (v1 - v0));
  }
  return best;
}

/// Trapezoid-rule area (differs in form from the shoelace cross sum).
inline double trapezoid_area(const std::vector<PixelPoint>& pts) {
  double a = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % pts.size()];
    a += (q.x() - p.x()) * (q.y() + p.y());
  }
  return std::abs(a) / 2.0;
}

/// Bilinear written as the weighted sum of four corners.
inline double bilinear(const Grid<double>& g, double x, double y) {
  const auto x0 = static_cast<Eigen::Index>(std::floor(x)), y0 = static_cast<Eigen::Index>(std::floor(y));
  const Eigen::Index x1 = std::min<Eigen::Index>(x0 + 1, g.cols() - 1), y1 = std::min<Eigen::Index>(y0 + 1, g.rows() - 1);
  const double fx = x - x0, fy = y - y0;
  return g(y0, x0) * (1 - fx) * (1 - fy) + g(y0, x1) * fx * (1 - fy) + g(y1, x0) * (1 - fx) * fy + g(y1, x1) * fx * fy;
}

/// Disk IoU by counting a fine lattice; accurate to roughly 1e-3.
inline double disk_iou_grid(const PixelPoint& c1, double r1, const PixelPoint& c2, double r2, double h = 0.02) {
  const double x0 = std::min(c1.x() - r1, c2.x() - r2), x1 = std::max(c1.x() + r1, c2.x() + r2);
  const double y0 = std::min(c1.y() - r1, c2.y() - r2), y1 = std::max(c1.y() + r1, c2.y() + r2);
  long long inter = 0, uni = 0;
  for (double y = y0 + h / 2; y < y1; y += h)
    for (double x = x0 + h / 2; x < x1; x += h) {
      const bool a = (x - c1.x()) * (x - c1.x()) + (y - c1.y()) * (y - c1.y()) <= r1 * r1;
      const bool b = (x - c2.x()) * (x - c2.x()) + (y - c2.y()) * (y - c2.y()) <= r2 * r2;
      inter += a && b;
      uni += a || b;
    }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace oracle
}  // namespace test

#endif  // CRATERRIM_TESTS_SUPPORT_HPP
