#ifndef CRATERRIM_IO_HPP
#define CRATERRIM_IO_HPP

#include "craterrim/crater.hpp"
#include "craterrim/detection.hpp"
#include "craterrim/morphometry.hpp"
#include "craterrim/rim_trace.hpp"
#include "craterrim/synth.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace craterrim {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rim records: one JSON object per line,
// {id, center_px:[x,y], radius_px, theta_step_deg, l_step, points:[{theta,x,y,source}]}
// plus optional confidence, tile_id and provenance for detection streams.

nlohmann::json rim_to_json(const RimPolygon& rim);
RimPolygon rim_from_json(const nlohmann::json& j);

struct RimRecord {
  RimPolygon rim;
  std::optional<double> confidence;
  std::optional<std::string> tile_id;
  std::optional<std::string> provenance;

  Detection to_detection() const;
};

nlohmann::json record_to_json(const RimRecord& rec);

/// Parses a newline-delimited stream; blank lines are skipped. Errors name
/// the 1-based line.
std::vector<RimRecord> read_rim_stream(std::istream& in);
void write_rim_line(std::ostream& out, const RimRecord& rec);

/// Catalog CSV. Geographic: id, lon_deg, lat_deg, diameter_km (converted to
/// pixels with `geo`). Pixel: id, x_px, y_px, radius_px.
enum class CatalogKind { Geographic, Pixel };
std::vector<CraterRecord> read_catalog(std::istream& in, CatalogKind kind, const GeoReference& geo);
void write_pixel_catalog(std::ostream& out, const std::vector<CraterRecord>& craters);

/// Detection CSV: tile_id, x_px, y_px, radius_px, confidence, lon_deg, lat_deg,
/// diameter_km. An optional leading id column is accepted on input; without
/// it the 0-based row number is the id.
std::vector<Detection> read_detections(std::istream& in);
void write_detection_header(std::ostream& out);
void write_detection_row(std::ostream& out, const Detection& det, const std::optional<GeoReference>& geo);

void write_morphometry_header(std::ostream& out);
void write_morphometry_row(std::ostream& out, const CraterRecord& crater, const CraterMorphometry& m,
                           const GeoReference& geo);

struct SyntheticTileFile {
  TileSpec tile;
  std::vector<SyntheticCraterSpec> craters;
};
SyntheticTileFile synth_spec_from_json(const nlohmann::json& j);
nlohmann::json synth_spec_to_json(const SyntheticTileFile& f);

/// Binary PGM (P5), foreground 255.
void write_pgm(const std::filesystem::path& path, const BinaryMask& mask);

/// Shortest round-trip decimal; empty for a missing value.
std::string format_number(double v);
std::string format_optional(const std::optional<double>& v);

}  // namespace craterrim

#endif  // CRATERRIM_IO_HPP
