#ifndef CRATERRIM_RIM_TRACE_HPP
#define CRATERRIM_RIM_TRACE_HPP

#include "craterrim/crater.hpp"
#include "craterrim/morphology.hpp"
#include "craterrim/raster.hpp"

#include <vector>

namespace craterrim {

enum class RimSource { Elevation, CircularFallback };

struct RimPoint {
  PixelPoint position = PixelPoint::Zero();
  double azimuth_deg = 0.0;
  double radial_distance = 0.0;
  RimSource source = RimSource::CircularFallback;
};

/// Rim points at azimuths k * theta_step, k = 0 .. 360/theta_step - 1.
struct RimPolygon {
  CraterRecord crater;
  std::vector<RimPoint> points;
  double theta_step_deg = 2.0;
  double l_step = 5.0;

  /// 2 x N matrix of rim positions in pixels.
  Eigen::Matrix2Xd vertices() const;
  double fallback_fraction() const;
};

/// Number of azimuths for a step; throws unless the step divides 360.
int azimuth_count(double theta_step_deg);

struct TraceParams {
  double theta_step_deg = 2.0;
  double l_step = 5.0;
  MorphParams morph;
};

/// Unit direction for an azimuth in raster coordinates (x right, y down).
inline Eigen::Vector2d ray_direction(double theta_deg) {
  const double t = deg2rad(theta_deg);
  return {std::cos(t), std::sin(t)};
}

/// True iff a foreground mask pixel lies on the ray between `from` and `to`
/// pixels from the centre. Every pixel cell the segment passes through is
/// tested, so an 8-connected curve cannot be crossed unseen.
bool ray_has_foreground(const RimRegionMask& mask, const PixelPoint& center, double theta_deg,
                        double from, double to);

struct ProfileSample {
  double l;
  double elevation;
};

struct ElevationProfile {
  std::vector<ProfileSample> samples;
  /// The profile stopped at the raster edge before reaching l_end.
  bool truncated = false;
};

/// Bilinear samples at l_start, l_start + 1, ... and l_end itself. Samples
/// past the raster edge end the sequence. Throws std::out_of_range when the
/// first sample is already off-raster.
ElevationProfile elevation_profile(const DemRaster& dem, const PixelPoint& center, double theta_deg,
                                   double l_start, double l_end);

/// Sliding-window search for the highest point along one azimuth, with the
/// catalog circle as fallback.
RimPoint trace_rim_point(const DemRaster& dem, const RimRegionMask& mask, const CraterRecord& crater,
                         double theta_deg, double l_step);

/// Rim region extraction followed by one trace per azimuth. Throws
/// RasterError when the crater window misses the raster.
RimPolygon extract_rim(const DemRaster& dem, const SlopeRaster& slope, const CraterRecord& crater,
                       const TraceParams& params = {}, RimRegionSteps* steps = nullptr);

}  // namespace craterrim

#endif  // CRATERRIM_RIM_TRACE_HPP
