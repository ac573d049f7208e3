#include "support.hpp"

#include "craterrim/geometry.hpp"
#include "craterrim/morphometry.hpp"

#include <doctest.h>

using namespace test;

namespace {

std::vector<PixelPoint> points_of(const RimPolygon& rim) {
  std::vector<PixelPoint> v;
  for (const auto& p : rim.points) v.push_back(p.position);
  return v;
}

RimPolygon rectangle(double w, double h, double angle_deg, const PixelPoint& c) {
  const double a = deg2rad(angle_deg);
  const Eigen::Matrix2d rot{{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}};
  std::vector<PixelPoint> pts;
  for (auto [x, y] : std::vector<std::pair<double, double>>{{-w / 2, -h / 2}, {w / 2, -h / 2}, {w / 2, h / 2}, {-w / 2, h / 2}})
    pts.push_back(c + rot * PixelPoint(x, y));
  return polygon_of(pts);
}

RimPolygon random_star(std::mt19937_64& rng, const PixelPoint& c, double base) {
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::vector<double> r(180);
  for (auto& v : r) v = base * (1.0 + u(rng));
  return polygon_from(c, [&](double th) { return r[static_cast<std::size_t>(std::lround(th / 2.0)) % 180]; });
}

SyntheticScene scene_of(const SyntheticCraterSpec& s, Eigen::Index size = 160) {
  TileSpec tile;
  tile.width = tile.height = size;
  tile.geo = geo100();
  return generate({s}, tile);
}

}  // namespace

TEST_CASE("diameters") {
  SUBCASE("circle") {
    const auto rim = circle_polygon({50, 50}, 25);
    for (int th = 0; th < 360; th += 2) CHECK(diameter_at(rim, th, 100.0) == doctest::Approx(5000.0).epsilon(1e-12));
  }
  SUBCASE("ellipse axes") {
    const auto prof = RadiusProfile::ellipse(30, 20);
    const auto rim = polygon_from({60, 60}, [&](double th) { return prof(th); });
    CHECK(diameter_at(rim, 0, 100.0) == doctest::Approx(6000.0));
    CHECK(diameter_at(rim, 90, 100.0) == doctest::Approx(4000.0));
  }
  SUBCASE("random star polygon vs coordinates") {
    std::mt19937_64 rng(1);
    const auto rim = random_star(rng, {70, 70}, 25);
    for (int k = 0; k < 90; ++k) {
      const PixelPoint a = rim.points[k].position, b = rim.points[k + 90].position;
      const double want = ((a - PixelPoint(70, 70)).norm() + (b - PixelPoint(70, 70)).norm()) * 100.0;
      CHECK(diameter_at(rim, 2.0 * k, 100.0) == doctest::Approx(want).epsilon(1e-12));
      CHECK(diameter_at(rim, 2.0 * k, 100.0) == diameter_at(rim, 2.0 * k + 180, 100.0));
    }
  }
  SUBCASE("off-grid azimuth") { CHECK_THROWS(diameter_at(circle_polygon({9, 9}, 5), 1.0, 1.0)); }
}

TEST_CASE("depths") {
  SUBCASE("bowl with rim at zero") {
    // Paraboloid only: rim elevation 0, floor -D.
    const double D = 500.0, R = 30.0;
    const auto dem = dem_from([&](double x, double y) {
      const double d = std::hypot(x - 80, y - 80);
      return d < R ? -D * (1 - d * d / (R * R)) : 0.0;
    }, 161, 161);
    const auto rim = circle_polygon({80, 80}, R);
    for (int th = 0; th < 180; th += 30) {
      const auto d = depth_at(dem, rim, th);
      CHECK(d.depth_a == doctest::Approx(D).epsilon(0.01));
      CHECK(d.depth_b == doctest::Approx(D).epsilon(0.01));
    }
  }
  SUBCASE("constant DEM") {
    const auto d = depth_at(constant_dem(50, 50, 3.0), circle_polygon({25, 25}, 10), 0);
    CHECK(d.depth_a == 0.0);
    CHECK(d.depth_b == 0.0);
  }
  SUBCASE("tilted floor") {
    SyntheticCraterSpec s;
    s.center = {80, 80};
    s.radius = RadiusProfile::constant(30);
    s.floor_tilt = 2.0;
    const auto scene = scene_of(s);
    const double D = s.depth_m, H = s.rim_height_m, t = s.floor_tilt, R = 30;
    // Floor minimum of -D(1 - s^2/R^2) + t s lies at s = -t R^2 / 2D.
    const double floor = -D - t * t * R * R / (4 * D);
    const auto d = depth_at(scene.dem, circle_polygon({80, 80}, R), 0);
    CHECK(d.depth_a != doctest::Approx(d.depth_b));
    CHECK(std::abs(d.depth_a - (H + t * R - floor)) <= 3.0);
    CHECK(std::abs(d.depth_b - (H - t * R - floor)) <= 3.0);
  }
  SUBCASE("endpoint off the raster") {
    CHECK_THROWS(depth_at(constant_dem(30, 30, 0.0), circle_polygon({25, 15}, 10), 0));
  }
}

TEST_CASE("area and perimeter") {
  SUBCASE("unit square") {
    const auto ap = polygon_area_perimeter(polygon_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 100.0);
    CHECK(ap.area_m2 == doctest::Approx(1e4));
    CHECK(ap.perimeter_m == doctest::Approx(400.0));
  }
  SUBCASE("180-gon") {
    const double R = 40;
    const auto ap = polygon_area_perimeter(circle_polygon({100, 100}, R), 1.0);
    CHECK(std::abs(ap.area_m2 - kPi * R * R) < 1e-3 * kPi * R * R);
    CHECK(std::abs(ap.perimeter_m - 2 * kPi * R) < 1e-3 * 2 * kPi * R);
  }
  SUBCASE("random polygons vs trapezoid rule") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
      const auto rim = random_star(rng, {40, 40}, 15);
      CHECK(std::abs(polygon_area_perimeter(rim, 1.0).area_m2 - oracle::trapezoid_area(points_of(rim))) < 1e-9);
    }
  }
  SUBCASE("collinear polygon") {
    const auto ap = polygon_area_perimeter(polygon_of({{0, 0}, {1, 1}, {2, 2}}), 1.0);
    CHECK(ap.area_m2 == 0.0);
    CHECK(ap.perimeter_m == doctest::Approx(4 * std::sqrt(2.0)));
  }
}

TEST_CASE("circularity") {
  const double R = 7.5;
  CHECK(circularity(kPi * R * R, 2 * kPi * R) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(circularity(1.0, 4.0) == doctest::Approx(kPi / 4).epsilon(1e-15));
  const auto ap = polygon_area_perimeter(circle_polygon({50, 50}, 25), 100.0);
  CHECK(circularity(ap.area_m2, ap.perimeter_m) >= 0.999);
  CHECK_THROWS_AS(circularity(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("minimum bounding rectangle") {
  SUBCASE("axis-aligned 3x5") {
    const auto r = min_bounding_rectangle(rectangle(5, 3, 0, {10, 10}), 1.0);
    CHECK(r.width == doctest::Approx(3.0));
    CHECK(r.length == doctest::Approx(5.0));
    CHECK(r.angle_deg == doctest::Approx(0.0));
  }
  SUBCASE("rotated by 30 degrees") {
    const auto r = min_bounding_rectangle(rectangle(5, 3, 30, {10, 10}), 1.0);
    CHECK(r.width == doctest::Approx(3.0));
    CHECK(r.length == doctest::Approx(5.0));
    CHECK(std::abs(r.angle_deg - 30.0) <= 0.5);
  }
  SUBCASE("no larger than an exhaustive orientation sweep") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0, 10);
    for (int i = 0; i < 30; ++i) {
      std::vector<PixelPoint> pts(12);
      for (auto& p : pts) p = {n(rng), 0.4 * n(rng)};
      Eigen::Matrix2Xd m(2, pts.size());
      for (std::size_t k = 0; k < pts.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = pts[k];
      CHECK(min_area_rectangle(m).area() <= oracle::mbr_sweep_area(pts, 0.1) + 1e-9);
    }
  }
  SUBCASE("degenerate hull") {
    Eigen::Matrix2Xd m(2, 3);
    m << 0, 1, 2, 0, 1, 2;
    CHECK_THROWS_AS(min_area_rectangle(m), std::invalid_argument);
  }
}

TEST_CASE("rectangle factor, sphericity, posture") {
  SUBCASE("rectangle fills its rectangle") {
    const auto rim = rectangle(8, 3, 17, {20, 20});
    const auto ap = polygon_area_perimeter(rim, 1.0);
    CHECK(rectangle_factor(ap.area_m2, min_bounding_rectangle(rim, 1.0).area()) == doctest::Approx(1.0));
  }
  SUBCASE("circle in its square") {
    const auto rim = circle_polygon({50, 50}, 30);
    const auto ap = polygon_area_perimeter(rim, 1.0);
    CHECK(rectangle_factor(ap.area_m2, min_bounding_rectangle(rim, 1.0).area()) == doctest::Approx(kPi / 4).epsilon(0.01));
    CHECK_THROWS_AS(rectangle_factor(1.0, 0.0), std::invalid_argument);
  }
  SUBCASE("sphericity of a circle and an ellipse") {
    CHECK(sphericity(circle_polygon({50, 50}, 30)).value == doctest::Approx(1.0).epsilon(1e-9));
    const auto prof = RadiusProfile::ellipse(30, 20);
    const auto s = sphericity(polygon_from({50, 50}, [&](double th) { return prof(th); }));
    CHECK(s.value == doctest::Approx(20.0 / 30.0).epsilon(0.005));
    CHECK_FALSE(s.centroid_outside);
  }
  SUBCASE("sphericity matches a direct distance scan") {
    std::mt19937_64 rng(4);
    const auto rim = random_star(rng, {60, 60}, 20);
    const auto pts = points_of(rim);
    Eigen::Matrix2Xd m(2, pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = pts[k];
    const PixelPoint c = centroid(m);
    double lo = 1e300, hi = 0;
    for (const auto& p : pts) {
      lo = std::min(lo, (p - c).norm());
      hi = std::max(hi, (p - c).norm());
    }
    CHECK(sphericity(rim).value == doctest::Approx(lo / hi).epsilon(1e-12));
  }
  SUBCASE("centroid outside is flagged") {
    // A thin C shape whose centroid falls in the gap.
    const auto s = sphericity(polygon_of({{0, 0}, {10, 0}, {10, 1}, {1, 1}, {1, 9}, {10, 9}, {10, 10}, {0, 10}}));
    CHECK(s.centroid_outside);
  }
  SUBCASE("posture") {
    const auto circle = posture(circle_polygon({50, 50}, 30));
    CHECK(circle.ratio == doctest::Approx(1.0).epsilon(0.01));
    const auto prof = RadiusProfile::ellipse(30, 15, 30);
    const auto p = posture(polygon_from({60, 60}, [&](double th) { return prof(th); }));
    CHECK(p.ratio == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(p.angle_deg - 30.0) <= 1.0);
    const auto sq = posture(rectangle(4, 4, 0, {5, 5}));
    CHECK(sq.ratio == doctest::Approx(1.0));
    const bool axis = std::abs(sq.angle_deg) < 1e-9 || std::abs(sq.angle_deg - 90) < 1e-9;
    CHECK(axis);
  }
}

TEST_CASE("index invariances") {
  std::mt19937_64 rng(5);
  const auto rim = random_star(rng, {100, 100}, 30);
  const auto pts = points_of(rim);
  auto indices = [](const RimPolygon& r) {
    const auto ap = polygon_area_perimeter(r, 1.0);
    const auto rect = min_bounding_rectangle(r, 1.0);
    return std::array<double, 5>{circularity(ap.area_m2, ap.perimeter_m), rectangle_factor(ap.area_m2, rect.area()),
                                 sphericity(r).value, rect.width / rect.length, rect.angle_deg};
  };
  const auto base = indices(rim);

  std::vector<PixelPoint> moved, turned, scaled;
  const double a = deg2rad(40);
  const Eigen::Matrix2d rot{{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}};
  for (const auto& p : pts) {
    moved.push_back(p + PixelPoint(13.5, -7.25));
    turned.push_back(PixelPoint(100, 100) + rot * (p - PixelPoint(100, 100)));
    scaled.push_back(2.5 * p);
  }
  const auto m = indices(polygon_of(moved));
  const auto t = indices(polygon_of(turned));
  const auto s = indices(polygon_of(scaled));
  for (int i = 0; i < 5; ++i) CHECK(m[i] == doctest::Approx(base[i]).epsilon(1e-9));
  for (int i = 0; i < 4; ++i) CHECK(t[i] == doctest::Approx(base[i]).epsilon(0.01));
  CHECK(std::fmod(base[4] + 40.0, 180.0) == doctest::Approx(t[4]).epsilon(1e-6));
  CHECK(s[0] == doctest::Approx(base[0]).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(base[1]).epsilon(1e-12));
}

TEST_CASE("compute_morphometry") {
  SUBCASE("ideal synthetic crater") {
    SyntheticCraterSpec s;
    s.center = {80, 80};
    s.radius = RadiusProfile::constant(25);
    s.rim_height_m = 0.0;  // floor-to-rim depth is then exactly the bowl depth
    s.depth_m = 500.0;
    const auto scene = scene_of(s);
    const auto m = compute_morphometry(scene.dem, scene.truth.front());
    CHECK(std::abs(m.avg_diameter_m - 5000.0) <= 100.0);
    REQUIRE(m.avg_depth_m);
    CHECK(std::abs(*m.avg_depth_m - 500.0) <= 20.0);
    CHECK(m.circularity >= 0.99);
    CHECK(m.fallback_fraction == 0.0);
  }
  SUBCASE("constant DEM with a fallback circle") {
    const auto dem = constant_dem(100, 100, 0.0);
    const auto rim = extract_rim(dem, compute_slope(dem), crater_at(50, 50, 20));
    const auto m = compute_morphometry(dem, rim);
    CHECK(*m.max_depth_m == 0.0);
    CHECK(*m.min_depth_m == 0.0);
    CHECK_FALSE(m.depth_ratio);
    CHECK(m.fallback_fraction == 1.0);
  }
  SUBCASE("aggregate ordering and depth offset invariance") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 10; ++i) {
      SyntheticCraterSpec s;
      s.center = {80, 80};
      s.radius = RadiusProfile::ellipse(30, 22, 37.0 * i);
      s.noise_sigma_m = 8;
      s.seed = static_cast<std::uint64_t>(i);
      auto scene = scene_of(s);
      const auto rim = random_star(rng, {80, 80}, 28);
      const auto m = compute_morphometry(scene.dem, rim);
      CHECK(m.min_diameter_m <= m.avg_diameter_m);
      CHECK(m.avg_diameter_m <= m.max_diameter_m);
      CHECK(*m.min_depth_m <= *m.avg_depth_m);
      CHECK(*m.avg_depth_m <= *m.max_depth_m);
      CHECK(m.circularity > 0.0);
      CHECK(m.rectangle_factor > 0.0);
      CHECK(m.rectangle_factor <= 1.0 + 1e-12);
      CHECK(m.sphericity <= 1.0);
      CHECK(m.posture_ratio <= 1.0);
      CHECK(m.posture_angle_deg >= 0.0);
      CHECK(m.posture_angle_deg < 180.0);
      if (m.depth_ratio) {
        CHECK(*m.depth_ratio >= 0.0);
        CHECK(*m.depth_ratio <= 1.0);
      }
      scene.dem.values += 1234.0;
      const auto shifted = compute_morphometry(scene.dem, rim);
      CHECK(*shifted.avg_depth_m == doctest::Approx(*m.avg_depth_m).epsilon(1e-9));
    }
  }
}
