#ifndef CRATERRIM_SYNTH_HPP
#define CRATERRIM_SYNTH_HPP

#include "craterrim/raster.hpp"
#include "craterrim/rim_trace.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace craterrim {

struct Harmonic {
  int order = 2;
  double amplitude_px = 0.0;
  double phase_deg = 0.0;
};

/// Rim radius as a function of azimuth.
struct RadiusProfile {
  enum class Kind { Constant, Ellipse, Harmonic };
  Kind kind = Kind::Constant;
  double radius_px = 25.0;      // Constant and Harmonic base radius
  double semi_major_px = 0.0;   // Ellipse
  double semi_minor_px = 0.0;   // Ellipse
  double orientation_deg = 0.0; // Ellipse major-axis azimuth
  std::vector<Harmonic> terms;  // Harmonic

  static RadiusProfile constant(double r);
  static RadiusProfile ellipse(double a, double b, double orientation_deg = 0.0);

  double operator()(double theta_deg) const;
  double min_radius() const;
  double max_radius() const;
  double mean_radius() const;
};

struct SyntheticCraterSpec {
  std::string id;
  PixelPoint center = PixelPoint::Zero();
  RadiusProfile radius;
  double depth_m = 500.0;
  double rim_height_m = 150.0;
  /// Gaussian sigma of the rim ridge.
  double rim_width_px = 3.0;
  /// [from, to) azimuth ranges, degrees, where the crater relief is flattened.
  std::vector<std::pair<double, double>> degraded_sectors;
  /// Plane tilt along +x through the crater centre, metres per pixel.
  double floor_tilt = 0.0;
  double noise_sigma_m = 0.0;
  std::uint64_t seed = 0;

  bool degraded_at(double theta_deg) const;
  /// Rim crest to floor, ignoring tilt and noise.
  double analytic_depth() const { return depth_m + rim_height_m; }
  void validate() const;
};

struct TileSpec {
  Eigen::Index width = 512;
  Eigen::Index height = 512;
  GeoReference geo;
  double base_elevation_m = 0.0;
};

struct SyntheticScene {
  /// Elevations are rounded to float32 so grid-binary storage is lossless.
  DemRaster dem;
  /// Ground-truth rims sampled from each radius profile.
  std::vector<RimPolygon> truth;
  /// Index pairs of craters whose footprints intersect.
  std::vector<std::pair<std::size_t, std::size_t>> overlaps;
};

/// Paraboloid bowl plus Gaussian rim ridge per crater, superposed with tilt
/// and seeded noise. Deterministic for fixed specs.
SyntheticScene generate(const std::vector<SyntheticCraterSpec>& specs, const TileSpec& tile,
                        double theta_step_deg = 2.0);

/// Elevation of one crater's noise-free relief at a pixel, relative to base.
double crater_relief(const SyntheticCraterSpec& spec, const PixelPoint& p);

/// Catalog record matching a spec (centre, mean radius).
CraterRecord catalog_record(const SyntheticCraterSpec& spec);

}  // namespace craterrim

#endif  // CRATERRIM_SYNTH_HPP
