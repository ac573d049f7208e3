#include "craterrim/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "craterrim/postproc.hpp"

namespace craterrim {

using nlohmann::json;

std::string format_number(double v) { return fmt::format("{}", v); }

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

json rim_to_json(const RimPolygon& rim) {
  json pts = json::array();
  for (const auto& p : rim.points) {
    pts.push_back({{"theta", p.azimuth_deg},
                   {"x", p.position.x()},
                   {"y", p.position.y()},
                   {"source", p.source == RimSource::Elevation ? "elevation" : "circular_fallback"}});
  }
  json j;
  j["id"] = rim.crater.id;
  j["center_px"] = {rim.crater.center.x(), rim.crater.center.y()};
  j["radius_px"] = rim.crater.radius_px;
  j["theta_step_deg"] = rim.theta_step_deg;
  j["l_step"] = rim.l_step;
  j["points"] = std::move(pts);
  return j;
}

RimPolygon rim_from_json(const json& j) {
  RimPolygon rim;
  const json& id = j.at("id");
  rim.crater.id = id.is_string() ? id.get<std::string>() : id.dump();
  const auto c = j.at("center_px").get<std::vector<double>>();
  if (c.size() != 2) throw ParseError("center_px must have two entries");
  rim.crater.center = {c[0], c[1]};
  rim.crater.radius_px = j.at("radius_px").get<double>();
  rim.theta_step_deg = j.at("theta_step_deg").get<double>();
  rim.l_step = j.value("l_step", 5.0);
  for (const auto& p : j.at("points")) {
    RimPoint pt;
    pt.azimuth_deg = p.at("theta").get<double>();
    pt.position = {p.at("x").get<double>(), p.at("y").get<double>()};
    pt.radial_distance = (pt.position - rim.crater.center).norm();
    const auto src = p.at("source").get<std::string>();
    if (src == "elevation") {
      pt.source = RimSource::Elevation;
    } else if (src == "circular_fallback") {
      pt.source = RimSource::CircularFallback;
    } else {
      throw ParseError("unknown rim point source '" + src + "'");
    }
    rim.points.push_back(pt);
  }
  validate(rim.crater);
  return rim;
}

Detection RimRecord::to_detection() const {
  Detection d;
  d.id = rim.crater.id;
  d.tile_id = tile_id.value_or("");
  d.center = rim.crater.center;
  d.radius_px = rim.crater.radius_px;
  d.confidence = confidence.value_or(1.0);
  d.rim = rim;
  return d;
}

json record_to_json(const RimRecord& rec) {
  json j = rim_to_json(rec.rim);
  if (rec.confidence) j["confidence"] = *rec.confidence;
  if (rec.tile_id) j["tile_id"] = *rec.tile_id;
  if (rec.provenance) j["provenance"] = *rec.provenance;
  return j;
}

std::vector<RimRecord> read_rim_stream(std::istream& in) {
  std::vector<RimRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      RimRecord rec;
      rec.rim = rim_from_json(j);
      if (j.contains("confidence")) rec.confidence = j["confidence"].get<double>();
      if (j.contains("tile_id")) rec.tile_id = j["tile_id"].get<std::string>();
      if (j.contains("provenance")) rec.provenance = j["provenance"].get<std::string>();
      out.push_back(std::move(rec));
    } catch (const std::exception& e) {
      throw ParseError(fmt::format("line {}: {}", lineno, e.what()));
    }
  }
  return out;
}

void write_rim_line(std::ostream& out, const RimRecord& rec) { out << record_to_json(rec).dump() << '\n'; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

/// Header-indexed CSV reader.
class CsvTable {
 public:
  explicit CsvTable(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno_;
      if (!trim(line).empty()) break;
    }
    const auto header = split_csv(line);
    for (std::size_t i = 0; i < header.size(); ++i) columns_[header[i]] = i;
    while (std::getline(in, line)) {
      ++lineno_;
      if (trim(line).empty()) continue;
      rows_.push_back({lineno_, split_csv(line)});
    }
  }

  bool has(const std::string& col) const { return columns_.count(col) != 0; }
  void require(std::initializer_list<const char*> cols) const {
    for (const char* c : cols)
      if (!has(c)) throw ParseError(fmt::format("CSV header is missing column '{}'", c));
  }
  std::size_t size() const { return rows_.size(); }

  const std::string& cell(std::size_t row, const std::string& col) const {
    const auto& r = rows_[row];
    const std::size_t idx = columns_.at(col);
    if (idx >= r.cells.size()) throw ParseError(fmt::format("line {}: missing column '{}'", r.line, col));
    return r.cells[idx];
  }

  double number(std::size_t row, const std::string& col) const {
    const std::string& s = cell(row, col);
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError(fmt::format("line {}: column '{}' is not a number: '{}'", rows_[row].line, col, s));
    }
  }

  std::size_t line(std::size_t row) const { return rows_[row].line; }

 private:
  struct Row {
    std::size_t line;
    std::vector<std::string> cells;
  };
  std::map<std::string, std::size_t> columns_;
  std::vector<Row> rows_;
  std::size_t lineno_ = 0;
};

}  // namespace

std::vector<CraterRecord> read_catalog(std::istream& in, CatalogKind kind, const GeoReference& geo) {
  CsvTable t(in);
  std::vector<CraterRecord> out;
  if (kind == CatalogKind::Pixel) {
    t.require({"id", "x_px", "y_px", "radius_px"});
  } else {
    t.require({"id", "lon_deg", "lat_deg", "diameter_km"});
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    CraterRecord c;
    c.id = t.cell(i, "id");
    if (kind == CatalogKind::Pixel) {
      c.center = {t.number(i, "x_px"), t.number(i, "y_px")};
      c.radius_px = t.number(i, "radius_px");
      c.diameter_km = 2.0 * c.radius_px * geo.resolution_m / 1000.0;
    } else {
      c.lon_deg = t.number(i, "lon_deg");
      c.lat_deg = t.number(i, "lat_deg");
      c.diameter_km = t.number(i, "diameter_km");
      const PixelCircle pc = geo_to_pixel(*c.lon_deg, *c.lat_deg, *c.diameter_km, geo);
      c.center = pc.center;
      c.radius_px = pc.radius_px;
    }
    try {
      validate(c);
    } catch (const std::exception& e) {
      throw ParseError(fmt::format("line {}: {}", t.line(i), e.what()));
    }
    out.push_back(std::move(c));
  }
  return out;
}

void write_pixel_catalog(std::ostream& out, const std::vector<CraterRecord>& craters) {
  out << "id,x_px,y_px,radius_px\n";
  for (const auto& c : craters)
    out << c.id << ',' << format_number(c.center.x()) << ',' << format_number(c.center.y()) << ','
        << format_number(c.radius_px) << '\n';
}

std::vector<Detection> read_detections(std::istream& in) {
  CsvTable t(in);
  t.require({"x_px", "y_px", "radius_px"});
  std::vector<Detection> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Detection d;
    d.id = t.has("id") ? t.cell(i, "id") : std::to_string(i);
    d.tile_id = t.has("tile_id") ? t.cell(i, "tile_id") : std::string();
    d.center = {t.number(i, "x_px"), t.number(i, "y_px")};
    d.radius_px = t.number(i, "radius_px");
    d.confidence = t.has("confidence") ? t.number(i, "confidence") : 1.0;
    try {
      validate(d);
    } catch (const std::exception& e) {
      throw ParseError(fmt::format("line {}: {}", t.line(i), e.what()));
    }
    out.push_back(std::move(d));
  }
  return out;
}

void write_detection_header(std::ostream& out) {
  out << "tile_id,x_px,y_px,radius_px,confidence,lon_deg,lat_deg,diameter_km\n";
}

void write_detection_row(std::ostream& out, const Detection& det, const std::optional<GeoReference>& geo) {
  out << det.tile_id << ',' << format_number(det.center.x()) << ',' << format_number(det.center.y()) << ','
      << format_number(det.radius_px) << ',' << format_number(det.confidence) << ',';
  if (geo) {
    const GeoPosition g = pixel_to_geo(det, *geo);
    out << format_number(g.lon_deg) << ',' << format_number(g.lat_deg) << ',' << format_number(g.diameter_km);
  } else {
    out << ",,";
  }
  out << '\n';
}

void write_morphometry_header(std::ostream& out) {
  out << "id,lon,lat,avg_diameter_m,min_diameter_m,max_diameter_m,avg_depth_m,min_depth_m,max_depth_m,"
         "depth_ratio,depth_diameter_ratio,circularity,rectangle_factor,sphericity,posture_ratio,"
         "posture_angle_deg,fallback_fraction\n";
}

void write_morphometry_row(std::ostream& out, const CraterRecord& crater, const CraterMorphometry& m,
                           const GeoReference& geo) {
  std::optional<double> lon = crater.lon_deg, lat = crater.lat_deg;
  if (!lon || !lat) {
    try {
      const GeoPosition g = pixel_to_geo(crater.center, crater.radius_px, geo);
      lon = g.lon_deg;
      lat = g.lat_deg;
    } catch (const std::domain_error&) {
    }
  }
  out << crater.id << ',' << format_optional(lon) << ',' << format_optional(lat) << ','
      << format_number(m.avg_diameter_m) << ',' << format_number(m.min_diameter_m) << ','
      << format_number(m.max_diameter_m) << ',' << format_optional(m.avg_depth_m) << ','
      << format_optional(m.min_depth_m) << ',' << format_optional(m.max_depth_m) << ','
      << format_optional(m.depth_ratio) << ',' << format_optional(m.depth_diameter_ratio) << ','
      << format_number(m.circularity) << ',' << format_number(m.rectangle_factor) << ','
      << format_number(m.sphericity) << ',' << format_number(m.posture_ratio) << ','
      << format_number(m.posture_angle_deg) << ',' << format_number(m.fallback_fraction) << '\n';
}

namespace {

RadiusProfile radius_from_json(const json& j) {
  if (j.is_number()) return RadiusProfile::constant(j.get<double>());
  const auto kind = j.value("kind", std::string("constant"));
  if (kind == "constant") return RadiusProfile::constant(j.at("r").get<double>());
  if (kind == "ellipse")
    return RadiusProfile::ellipse(j.at("a").get<double>(), j.at("b").get<double>(), j.value("orientation_deg", 0.0));
  if (kind == "harmonic") {
    RadiusProfile p;
    p.kind = RadiusProfile::Kind::Harmonic;
    p.radius_px = j.at("r").get<double>();
    for (const auto& t : j.value("terms", json::array()))
      p.terms.push_back({t.at("order").get<int>(), t.at("amplitude_px").get<double>(), t.value("phase_deg", 0.0)});
    return p;
  }
  throw ParseError("unknown radius kind '" + kind + "'");
}

json radius_to_json(const RadiusProfile& p) {
  switch (p.kind) {
    case RadiusProfile::Kind::Constant:
      return {{"kind", "constant"}, {"r", p.radius_px}};
    case RadiusProfile::Kind::Ellipse:
      return {{"kind", "ellipse"}, {"a", p.semi_major_px}, {"b", p.semi_minor_px}, {"orientation_deg", p.orientation_deg}};
    case RadiusProfile::Kind::Harmonic: {
      json terms = json::array();
      for (const auto& t : p.terms)
        terms.push_back({{"order", t.order}, {"amplitude_px", t.amplitude_px}, {"phase_deg", t.phase_deg}});
      return {{"kind", "harmonic"}, {"r", p.radius_px}, {"terms", terms}};
    }
  }
  return {};
}

}  // namespace

SyntheticTileFile synth_spec_from_json(const json& j) {
  SyntheticTileFile f;
  try {
    const json* craters = &j;
    if (j.is_object()) {
      if (j.contains("tile")) {
        const json& t = j["tile"];
        f.tile.width = t.value("width", Eigen::Index{512});
        f.tile.height = t.value("height", Eigen::Index{512});
        f.tile.geo.resolution_m = t.value("resolution_m", 100.0);
        f.tile.geo.origin_lon_deg = t.value("origin_lon_deg", 0.0);
        f.tile.geo.origin_lat_deg = t.value("origin_lat_deg", 0.0);
        f.tile.geo.body_radius_m = t.value("body_radius_m", kMoonRadiusMeters);
        f.tile.base_elevation_m = t.value("base_elevation_m", 0.0);
      }
      craters = &j.at("craters");
    }
    std::size_t index = 0;
    for (const auto& c : *craters) {
      SyntheticCraterSpec s;
      s.id = c.contains("id") ? (c["id"].is_string() ? c["id"].get<std::string>() : c["id"].dump())
                              : std::to_string(index);
      const auto center = c.at("center").get<std::vector<double>>();
      if (center.size() != 2) throw ParseError("center must have two entries");
      s.center = {center[0], center[1]};
      s.radius = radius_from_json(c.at("radius"));
      s.depth_m = c.value("depth_m", s.depth_m);
      s.rim_height_m = c.value("rim_height_m", s.rim_height_m);
      s.rim_width_px = c.value("rim_width_px", s.rim_width_px);
      for (const auto& sec : c.value("degraded_sectors", json::array())) {
        const auto v = sec.get<std::vector<double>>();
        if (v.size() != 2) throw ParseError("degraded sector must be [from, to]");
        s.degraded_sectors.emplace_back(v[0], v[1]);
      }
      s.floor_tilt = c.value("floor_tilt", 0.0);
      s.noise_sigma_m = c.value("noise_sigma_m", 0.0);
      s.seed = c.value("seed", std::uint64_t{0});
      f.craters.push_back(std::move(s));
      ++index;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("synthetic spec: ") + e.what());
  }
  return f;
}

json synth_spec_to_json(const SyntheticTileFile& f) {
  json craters = json::array();
  for (const auto& s : f.craters) {
    json sectors = json::array();
    for (const auto& [a, b] : s.degraded_sectors) sectors.push_back({a, b});
    craters.push_back({{"id", s.id},
                       {"center", {s.center.x(), s.center.y()}},
                       {"radius", radius_to_json(s.radius)},
                       {"depth_m", s.depth_m},
                       {"rim_height_m", s.rim_height_m},
                       {"rim_width_px", s.rim_width_px},
                       {"degraded_sectors", sectors},
                       {"floor_tilt", s.floor_tilt},
                       {"noise_sigma_m", s.noise_sigma_m},
                       {"seed", s.seed}});
  }
  return {{"tile",
           {{"width", f.tile.width},
            {"height", f.tile.height},
            {"resolution_m", f.tile.geo.resolution_m},
            {"origin_lon_deg", f.tile.geo.origin_lon_deg},
            {"origin_lat_deg", f.tile.geo.origin_lat_deg},
            {"body_radius_m", f.tile.geo.body_radius_m},
            {"base_elevation_m", f.tile.base_elevation_m}}},
          {"craters", craters}};
}

void write_pgm(const std::filesystem::path& path, const BinaryMask& mask) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "P5\n" << mask.cols() << ' ' << mask.rows() << "\n255\n";
  for (Eigen::Index y = 0; y < mask.rows(); ++y)
    for (Eigen::Index x = 0; x < mask.cols(); ++x) out.put(mask(y, x) ? static_cast<char>(255) : '\0');
}

}  // namespace craterrim
