#ifndef CRATERRIM_GEOMETRY_HPP
#define CRATERRIM_GEOMETRY_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace craterrim {

/// Polygon vertices as columns of a 2 x N matrix, closed implicitly.
template <typename Scalar>
using Polygon2 = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

/// Signed shoelace area (positive for counter-clockwise in x-right/y-up).
template <typename Derived>
typename Derived::Scalar signed_area(const Eigen::MatrixBase<Derived>& pts) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = pts.cols();
  Scalar twice = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    twice += pts(0, i) * pts(1, j) - pts(0, j) * pts(1, i);
  }
  return twice / Scalar(2);
}

template <typename Derived>
typename Derived::Scalar perimeter(const Eigen::MatrixBase<Derived>& pts) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = pts.cols();
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < n; ++i) sum += (pts.col((i + 1) % n) - pts.col(i)).norm();
  return sum;
}

/// Area centroid; falls back to the vertex mean for zero-area polygons.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> centroid(const Eigen::MatrixBase<Derived>& pts) {
  using Scalar = typename Derived::Scalar;
  const Scalar a = signed_area(pts);
  if (a == Scalar(0)) return pts.rowwise().mean();
  // Shift to the first vertex to limit cancellation.
  const Eigen::Matrix<Scalar, 2, 1> o = pts.col(0);
  Eigen::Matrix<Scalar, 2, 1> c = Eigen::Matrix<Scalar, 2, 1>::Zero();
  const Eigen::Index n = pts.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Matrix<Scalar, 2, 1> p = pts.col(i) - o;
    const Eigen::Matrix<Scalar, 2, 1> q = pts.col((i + 1) % n) - o;
    const Scalar cross = p.x() * q.y() - q.x() * p.y();
    c += (p + q) * cross;
  }
  return o + c / (Scalar(6) * a);
}

/// Even-odd point-in-polygon test.
template <typename Derived, typename PointDerived>
bool contains_point(const Eigen::MatrixBase<Derived>& pts, const Eigen::MatrixBase<PointDerived>& p) {
  bool inside = false;
  const Eigen::Index n = pts.cols();
  for (Eigen::Index i = 0, j = n - 1; i < n; j = i++) {
    const auto xi = pts(0, i), yi = pts(1, i), xj = pts(0, j), yj = pts(1, j);
    if ((yi > p.y()) != (yj > p.y()) && p.x() < (xj - xi) * (p.y() - yi) / (yj - yi) + xi) inside = !inside;
  }
  return inside;
}

/// Convex hull by Andrew's monotone chain; collinear points dropped.
template <typename Derived>
Polygon2<typename Derived::Scalar> convex_hull(const Eigen::MatrixBase<Derived>& pts) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = pts.cols();
  if (n < 3) return pts;
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return pts(0, a) < pts(0, b) || (pts(0, a) == pts(0, b) && pts(1, a) < pts(1, b));
  });
  auto cross = [&](Eigen::Index o, Eigen::Index a, Eigen::Index b) {
    return (pts(0, a) - pts(0, o)) * (pts(1, b) - pts(1, o)) - (pts(1, a) - pts(1, o)) * (pts(0, b) - pts(0, o));
  };
  std::vector<Eigen::Index> hull(static_cast<std::size_t>(2 * n));
  std::size_t k = 0;
  for (Eigen::Index i : idx) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) <= Scalar(0)) --k;
    hull[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    const Eigen::Index i = idx[t];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], i) <= Scalar(0)) --k;
    hull[k++] = i;
  }
  if (k > 1) --k;
  Polygon2<Scalar> out(2, static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) out.col(static_cast<Eigen::Index>(i)) = pts.col(hull[i]);
  return out;
}

template <typename Scalar>
struct OrientedRectangle {
  Scalar width = 0;   // shorter side
  Scalar length = 0;  // longer side
  /// Direction of the long side against the +x axis, degrees in [0, 180).
  Scalar angle_deg = 0;
  Scalar area() const { return width * length; }
};

/// Minimum-area enclosing rectangle by rotating calipers over the hull edges.
template <typename Derived>
OrientedRectangle<typename Derived::Scalar> min_area_rectangle(const Eigen::MatrixBase<Derived>& pts) {
  using Scalar = typename Derived::Scalar;
  using Vec = Eigen::Matrix<Scalar, 2, 1>;
  const Polygon2<Scalar> hull = convex_hull(pts);
  if (hull.cols() < 3) throw std::invalid_argument("min_area_rectangle: degenerate hull");

  OrientedRectangle<Scalar> best;
  Scalar best_area = std::numeric_limits<Scalar>::infinity();
  const Eigen::Index n = hull.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec e = hull.col((i + 1) % n) - hull.col(i);
    const Scalar len = e.norm();
    if (len == Scalar(0)) continue;
    e /= len;
    const Vec nrm(-e.y(), e.x());
    const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> along = e.transpose() * hull;
    const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> across = nrm.transpose() * hull;
    const Scalar su = along.maxCoeff() - along.minCoeff();
    const Scalar sv = across.maxCoeff() - across.minCoeff();
    const Scalar area = su * sv;
    if (area < best_area) {
      best_area = area;
      const Vec long_dir = su >= sv ? e : nrm;
      best.length = std::max(su, sv);
      best.width = std::min(su, sv);
      Scalar ang = std::atan2(long_dir.y(), long_dir.x()) * Scalar(180) / Scalar(3.14159265358979323846);
      ang = std::fmod(ang, Scalar(180));
      if (ang < Scalar(0)) ang += Scalar(180);
      if (ang >= Scalar(180)) ang -= Scalar(180);
      best.angle_deg = ang;
    }
  }
  return best;
}

}  // namespace craterrim

#endif  // CRATERRIM_GEOMETRY_HPP
