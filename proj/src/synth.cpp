#include "craterrim/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace craterrim {

RadiusProfile RadiusProfile::constant(double r) {
  RadiusProfile p;
  p.kind = Kind::Constant;
  p.radius_px = r;
  return p;
}

RadiusProfile RadiusProfile::ellipse(double a, double b, double orientation_deg) {
  RadiusProfile p;
  p.kind = Kind::Ellipse;
  p.semi_major_px = a;
  p.semi_minor_px = b;
  p.orientation_deg = orientation_deg;
  return p;
}

double RadiusProfile::operator()(double theta_deg) const {
  switch (kind) {
    case Kind::Constant:
      return radius_px;
    case Kind::Ellipse: {
      const double phi = deg2rad(theta_deg - orientation_deg);
      const double a = semi_major_px, b = semi_minor_px;
      return a * b / std::hypot(b * std::cos(phi), a * std::sin(phi));
    }
    case Kind::Harmonic: {
      double r = radius_px;
      for (const auto& h : terms) r += h.amplitude_px * std::cos(deg2rad(h.order * theta_deg + h.phase_deg));
      return r;
    }
  }
  return radius_px;
}

namespace {

template <typename F>
double scan_azimuths(const RadiusProfile& p, F&& combine, double init) {
  double acc = init;
  for (int k = 0; k < 3600; ++k) acc = combine(acc, p(k * 0.1));
  return acc;
}

double wrap360(double deg) {
  double d = std::fmod(deg, 360.0);
  return d < 0.0 ? d + 360.0 : d;
}

}  // namespace

double RadiusProfile::min_radius() const {
  return scan_azimuths(*this, [](double a, double b) { return std::min(a, b); }, 1e300);
}

double RadiusProfile::max_radius() const {
  return scan_azimuths(*this, [](double a, double b) { return std::max(a, b); }, 0.0);
}

double RadiusProfile::mean_radius() const {
  return scan_azimuths(*this, [](double a, double b) { return a + b; }, 0.0) / 3600.0;
}

bool SyntheticCraterSpec::degraded_at(double theta_deg) const {
  const double t = wrap360(theta_deg);
  for (const auto& [from, to] : degraded_sectors) {
    const double f = wrap360(from);
    const double span = to - from;
    if (span >= 360.0) return true;
    const double off = wrap360(t - f);
    if (off < span) return true;
  }
  return false;
}

void SyntheticCraterSpec::validate() const {
  if (!(radius.min_radius() > 3.0)) throw std::invalid_argument("crater '" + id + "': rim radius must exceed 3 px");
  if (!(rim_width_px > 0.0)) throw std::invalid_argument("crater '" + id + "': rim width must be positive");
  if (!(depth_m >= 0.0)) throw std::invalid_argument("crater '" + id + "': depth must be >= 0");
  if (!(noise_sigma_m >= 0.0)) throw std::invalid_argument("crater '" + id + "': noise sigma must be >= 0");
}

double crater_relief(const SyntheticCraterSpec& spec, const PixelPoint& p) {
  const Eigen::Vector2d d = p - spec.center;
  const double dist = d.norm();
  const double theta = dist > 0.0 ? rad2deg(std::atan2(d.y(), d.x())) : 0.0;
  if (spec.degraded_at(theta)) return 0.0;
  const double r = spec.radius(theta);
  double z = 0.0;
  if (dist < r) {
    const double q = dist / r;
    z -= spec.depth_m * (1.0 - q * q);
  }
  const double s = (dist - r) / spec.rim_width_px;
  z += spec.rim_height_m * std::exp(-0.5 * s * s);
  return z;
}

CraterRecord catalog_record(const SyntheticCraterSpec& spec) {
  CraterRecord c;
  c.id = spec.id;
  c.center = spec.center;
  c.radius_px = spec.radius.mean_radius();
  return c;
}

SyntheticScene generate(const std::vector<SyntheticCraterSpec>& specs, const TileSpec& tile,
                        double theta_step_deg) {
  if (tile.width <= 0 || tile.height <= 0 || !(tile.geo.resolution_m > 0.0))
    throw std::invalid_argument("tile dimensions and resolution must be positive");
  const int n_az = azimuth_count(theta_step_deg);

  Grid<double> z = Grid<double>::Constant(tile.height, tile.width, tile.base_elevation_m);
  SyntheticScene scene;
  std::vector<double> reach;

  for (const auto& spec : specs) {
    spec.validate();
    if (spec.center.x() < 0.0 || spec.center.y() < 0.0 || spec.center.x() > static_cast<double>(tile.width - 1) ||
        spec.center.y() > static_cast<double>(tile.height - 1))
      throw std::invalid_argument("crater '" + spec.id + "': centre outside tile");

    const double r_max = spec.radius.max_radius();
    // Ridge tail beyond 8 sigma is below 1.3e-14 of the rim height.
    const double footprint = r_max + 8.0 * spec.rim_width_px;
    reach.push_back(r_max + 3.0 * spec.rim_width_px);

    const auto x0 = static_cast<Eigen::Index>(std::max(0.0, std::floor(spec.center.x() - footprint)));
    const auto y0 = static_cast<Eigen::Index>(std::max(0.0, std::floor(spec.center.y() - footprint)));
    const auto x1 = static_cast<Eigen::Index>(
        std::min(static_cast<double>(tile.width - 1), std::ceil(spec.center.x() + footprint)));
    const auto y1 = static_cast<Eigen::Index>(
        std::min(static_cast<double>(tile.height - 1), std::ceil(spec.center.y() + footprint)));

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, spec.noise_sigma_m > 0.0 ? spec.noise_sigma_m : 1.0);
    for (Eigen::Index y = y0; y <= y1; ++y) {
      for (Eigen::Index x = x0; x <= x1; ++x) {
        const PixelPoint p(static_cast<double>(x), static_cast<double>(y));
        if ((p - spec.center).norm() > footprint) continue;
        z(y, x) += crater_relief(spec, p);
        if (spec.noise_sigma_m > 0.0) z(y, x) += noise(rng);
      }
    }
    if (spec.floor_tilt != 0.0) {
      for (Eigen::Index x = 0; x < tile.width; ++x)
        z.col(x) += spec.floor_tilt * (static_cast<double>(x) - spec.center.x());
    }

    RimPolygon truth;
    truth.crater = catalog_record(spec);
    truth.theta_step_deg = theta_step_deg;
    for (int k = 0; k < n_az; ++k) {
      RimPoint pt;
      pt.azimuth_deg = k * theta_step_deg;
      pt.radial_distance = spec.radius(pt.azimuth_deg);
      pt.position = spec.center + pt.radial_distance * ray_direction(pt.azimuth_deg);
      pt.source = RimSource::Elevation;
      truth.points.push_back(pt);
    }
    scene.truth.push_back(std::move(truth));
  }

  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t j = i + 1; j < specs.size(); ++j)
      if ((specs[i].center - specs[j].center).norm() < reach[i] + reach[j]) scene.overlaps.emplace_back(i, j);

  z = z.cast<float>().cast<double>();
  scene.dem = DemRaster(std::move(z), tile.geo);
  return scene;
}

}  // namespace craterrim
