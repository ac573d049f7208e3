#include "support.hpp"

#include <doctest.h>

using namespace test;

namespace {

BinaryMask disk_mask(Eigen::Index size, double cx, double cy, double r) {
  BinaryMask m(size, size);
  for (Eigen::Index y = 0; y < size; ++y)
    for (Eigen::Index x = 0; x < size; ++x) m(y, x) = (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r;
  return m;
}

BinaryMask ring_mask(Eigen::Index size, double c, double r_in, double r_out) {
  return disk_mask(size, c, c, r_out) && !disk_mask(size, c, c, r_in);
}

}  // namespace

TEST_CASE("structuring elements are symmetric") {
  for (auto shape : {ElementShape::Square, ElementShape::Cross, ElementShape::Disk}) {
    for (int r = 1; r <= 4; ++r) {
      const auto offs = StructuringElement{shape, r}.offsets();
      std::set<std::pair<int, int>> s;
      for (const auto& o : offs) s.insert({o.x(), o.y()});
      for (const auto& o : offs) CHECK(s.count({-o.x(), -o.y()}) == 1);
      CHECK(s.count({0, 0}) == 1);
    }
  }
  CHECK(StructuringElement{ElementShape::Disk, 1}.offsets().size() == 5);
  CHECK(StructuringElement{ElementShape::Square, 1}.offsets().size() == 9);
  CHECK(StructuringElement{ElementShape::Disk, 2}.offsets().size() == 13);
  CHECK_THROWS_AS(StructuringElement({ElementShape::Disk, 0}).offsets(), std::invalid_argument);
}

TEST_CASE("otsu on a perfect bimodal window") {
  Grid<double> g(8, 8);
  g.leftCols(4).setConstant(0.0);
  g.rightCols(4).setConstant(100.0);
  const auto r = otsu_threshold(g);
  CHECK_FALSE(r.degenerate);
  CHECK(r.threshold > 0.0);
  CHECK(r.threshold < 100.0);
  CHECK(equal(r.mask, g == 100.0));
}

TEST_CASE("otsu on a constant window is degenerate") {
  const auto r = otsu_threshold(Grid<double>::Constant(5, 6, 3.0));
  CHECK(r.degenerate);
  CHECK_FALSE(r.mask.any());
}

TEST_CASE("otsu ignores NaN cells") {
  Grid<double> g(2, 4);
  g << 0, 0, 10, 10, std::nan(""), 0, 10, std::nan("");
  const auto r = otsu_threshold(g);
  CHECK_FALSE(r.mask(1, 0));
  CHECK_FALSE(r.mask(1, 3));
  CHECK(r.mask(1, 2));
}

TEST_CASE("otsu matches exhaustive search on random windows") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  std::normal_distribution<double> n1(10.0, 3.0), n2(30.0, 5.0);
  for (int trial = 0; trial < 60; ++trial) {
    Grid<double> g(64, 64);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      switch (trial % 3) {
        case 0: g.data()[i] = u(rng); break;
        case 1: g.data()[i] = (i % 3 == 0) ? n1(rng) : n2(rng); break;
        default: g.data()[i] = std::round(u(rng)) / 4.0; break;  // heavy ties
      }
    }
    const auto got = otsu_threshold(g);
    const auto want = oracle::otsu(g);
    CHECK(got.threshold == want.threshold);
    CHECK(equal(got.mask, g > want.threshold));
  }
}

TEST_CASE("remove_small_objects") {
  SUBCASE("isolated pixel") {
    BinaryMask m = BinaryMask::Constant(5, 5, false);
    m(2, 2) = true;
    CHECK_FALSE(remove_small_objects(m, 2).any());
  }
  SUBCASE("area equal to the limit survives") {
    BinaryMask m = BinaryMask::Constant(6, 6, false);
    m(1, 1) = m(2, 2) = m(3, 3) = true;  // diagonal chain, 8-connected
    CHECK(equal(remove_small_objects(m, 3), m));
    CHECK_FALSE(remove_small_objects(m, 4).any());
  }
  SUBCASE("rejects a zero limit") {
    CHECK_THROWS_AS(remove_small_objects(BinaryMask::Constant(2, 2, false), 0), std::invalid_argument);
  }
  SUBCASE("agrees with flood-fill labelling") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const BinaryMask m = random_mask(rng, 30, 40, 0.3);
      const Eigen::Index min_area = 1 + trial % 9;
      BinaryMask want = BinaryMask::Constant(30, 40, false);
      for (const auto& comp : oracle::components(m))
        if (static_cast<Eigen::Index>(comp.size()) >= min_area)
          for (auto [y, x] : comp) want(y, x) = true;
      CHECK(equal(remove_small_objects(m, min_area), want));
    }
  }
  SUBCASE("labelling areas agree with flood fill") {
    std::mt19937_64 rng(6);
    const BinaryMask m = random_mask(rng, 25, 25, 0.45);
    const auto comps = label_components(m);
    const auto want = oracle::components(m);
    CHECK(comps.areas.size() == want.size() + 1);
    for (const auto& c : want) {
      const int label = comps.labels(c.front().first, c.front().second);
      CHECK(comps.areas[static_cast<std::size_t>(label)] == static_cast<Eigen::Index>(c.size()));
      for (auto [y, x] : c) CHECK(comps.labels(y, x) == label);
    }
  }
}

TEST_CASE("closing") {
  const StructuringElement se{ElementShape::Disk, 2};
  SUBCASE("solid rectangle unchanged") {
    BinaryMask m = BinaryMask::Constant(20, 20, false);
    m.block(4, 3, 9, 12).setConstant(true);
    CHECK(equal(binary_closing(m, se), m));
  }
  SUBCASE("empty stays empty") {
    CHECK_FALSE(binary_closing(BinaryMask::Constant(10, 10, false), se).any());
  }
  SUBCASE("one-pixel gap in a bar is bridged") {
    // At a ring's convex tip the cut column is the only support, so a bar it is.
    BinaryMask m = BinaryMask::Constant(15, 34, false);
    m.block(5, 3, 5, 28).setConstant(true);
    m.col(15).setConstant(false);
    REQUIRE(oracle::components(m).size() == 2);
    CHECK(oracle::components(binary_closing(m, se)).size() == 1);
  }
}

TEST_CASE("thinning") {
  SUBCASE("a one-pixel line is unchanged") {
    BinaryMask m = BinaryMask::Constant(10, 20, false);
    m.row(4).segment(2, 15).setConstant(true);
    CHECK(equal(thin(m), m));
  }
  SUBCASE("a 20x3 bar becomes a one-pixel skeleton") {
    BinaryMask m = BinaryMask::Constant(9, 26, false);
    m.block(3, 3, 3, 20).setConstant(true);
    const BinaryMask t = thin(m);
    CHECK(subset(t, m));
    Eigen::Index length = 0;
    for (Eigen::Index x = 0; x < t.cols(); ++x) {
      const auto column = t.col(x).cast<int>().sum();
      CHECK(column <= 1);
      length += column;
    }
    CHECK(length >= 16);  // each end erodes by about the half-width
  }
  SUBCASE("empty stays empty") { CHECK_FALSE(thin(BinaryMask::Constant(7, 7, false)).any()); }
  SUBCASE("a thick ring stays one connected loop") {
    const BinaryMask m = ring_mask(61, 30, 18, 24);
    const BinaryMask t = thin(m);
    CHECK(subset(t, m));
    CHECK(oracle::components(t).size() == 1);
    CHECK(count(t) < count(m) / 3);
    CHECK(equal(thin(t), t));  // converged
  }
}

TEST_CASE("opening") {
  SUBCASE("isolated pixel removed") {
    BinaryMask m = BinaryMask::Constant(9, 9, false);
    m(4, 4) = true;
    for (int r = 1; r <= 3; ++r)
      for (auto shape : {ElementShape::Square, ElementShape::Cross, ElementShape::Disk})
        CHECK_FALSE(binary_open(m, {shape, r}).any());
  }
  SUBCASE("solid disk loses little area") {
    const BinaryMask m = disk_mask(31, 15, 15, 10);
    const BinaryMask o = binary_open(m, {ElementShape::Disk, 2});
    CHECK(subset(o, m));
    CHECK(static_cast<double>(count(m) - count(o)) < 0.15 * static_cast<double>(count(m)));
  }
  SUBCASE("idempotent on random masks") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
      const BinaryMask m = random_mask(rng, 24, 24, 0.6);
      const StructuringElement se{ElementShape::Disk, 1 + i % 2};
      const BinaryMask o = binary_open(m, se);
      CHECK(equal(binary_open(o, se), o));
    }
  }
  SUBCASE("a radius-1 element erases a thinned skeleton") {
    // Why the final opening is off by default: after thinning nothing is
    // wider than one pixel, so erosion by the plus-shaped element empties it.
    const BinaryMask skeleton = thin(ring_mask(61, 30, 18, 24));
    REQUIRE(skeleton.any());
    CHECK_FALSE(binary_open(skeleton, {ElementShape::Disk, 1}).any());
    CHECK_FALSE(binary_open(skeleton, {ElementShape::Cross, 1}).any());
  }
}

TEST_CASE("rim region pipeline") {
  TileSpec tile;
  tile.width = tile.height = 160;
  tile.geo = geo100();

  SUBCASE("foreground concentrates on the ridge") {
    SyntheticCraterSpec spec;
    spec.center = {80, 80};
    spec.radius = RadiusProfile::constant(30);
    const auto scene = generate({spec}, tile);
    const auto slope = compute_slope(scene.dem);
    const CraterRecord c = crater_at(80, 80, 30);
    RimRegionSteps steps;
    const auto region = extract_rim_region(slope, c, {}, &steps);
    CHECK(region.offset.x == 32);
    CHECK(region.offset.y == 32);
    CHECK(region.mask.rows() == 97);
    CHECK(equal(steps.opened, region.mask));
    CHECK(subset(steps.thinned, steps.closed));
    Eigen::Index inside = 0, total = 0;
    for (Eigen::Index y = 0; y < region.mask.rows(); ++y)
      for (Eigen::Index x = 0; x < region.mask.cols(); ++x) {
        if (!region.mask(y, x)) continue;
        const double d = std::hypot(x + region.offset.x - 80.0, y + region.offset.y - 80.0);
        ++total;
        inside += d >= 0.7 * 30 && d <= 1.3 * 30;
      }
    REQUIRE(total > 0);
    CHECK(static_cast<double>(inside) >= 0.9 * static_cast<double>(total));
  }

  SUBCASE("constant DEM gives an empty mask") {
    const auto slope = compute_slope(constant_dem(100, 100, -200.0));
    const auto region = extract_rim_region(slope, crater_at(50, 50, 20), {});
    CHECK(region.degenerate);
    CHECK_FALSE(region.mask.any());
  }

  SUBCASE("degraded sector carries no foreground along its rays") {
    SyntheticCraterSpec spec;
    spec.center = {80, 80};
    spec.radius = RadiusProfile::constant(30);
    spec.degraded_sectors = {{90.0, 180.0}};
    const auto scene = generate({spec}, tile);
    const auto region = extract_rim_region(compute_slope(scene.dem), crater_at(80, 80, 30), {});
    int hits_in = 0, hits_out = 0;
    // Stay a few degrees clear of the sector edges, where the relief steps.
    for (int th = 0; th < 360; th += 2) {
      const bool fg = ray_has_foreground(region, {80, 80}, th, 0.3 * 30, 1.6 * 30);
      if (th >= 100 && th <= 170) hits_in += fg;
      if (th >= 200 || th <= 70) hits_out += fg;
    }
    CHECK(hits_in == 0);
    CHECK(hits_out > 60);
  }

  SUBCASE("radius below 3 px is rejected") {
    const auto slope = compute_slope(constant_dem(20, 20, 0.0));
    CHECK_THROWS_AS(extract_rim_region(slope, crater_at(10, 10, 2.5), {}), std::invalid_argument);
  }

  SUBCASE("minimum area default scales with radius") {
    MorphParams p;
    CHECK(p.min_area_for(25) == 8);
    CHECK(p.min_area_for(400) == 20);
    p.min_area = 3;
    CHECK(p.min_area_for(400) == 3);
  }
}
