#include "craterrim/dem_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

namespace craterrim {

namespace fs = std::filesystem;
using nlohmann::json;

DemFormat parse_dem_format(std::string_view name) {
  if (name == "grid-binary") return DemFormat::GridBinary;
  if (name == "ascii-grid") return DemFormat::AsciiGrid;
  throw RasterError(fmt::format("unknown DEM format '{}'", name));
}

DemFormat guess_dem_format(const fs::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".asc" || ext == ".ascii") ? DemFormat::AsciiGrid : DemFormat::GridBinary;
}

fs::path sidecar_path(const fs::path& payload) {
  fs::path p = payload;
  p.replace_extension(".json");
  return p;
}

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

std::uint32_t to_little(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw RasterError(fmt::format("cannot open '{}'", path.string()));
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw RasterError(fmt::format("malformed header '{}': {}", path.string(), e.what()));
  }
}

DemHeader header_from_json(const json& j, const fs::path& path) {
  DemHeader h;
  try {
    h.width = j.at("width").get<Eigen::Index>();
    h.height = j.at("height").get<Eigen::Index>();
    h.geo.resolution_m = j.at("resolution_m").get<double>();
    h.geo.origin_lon_deg = j.value("origin_lon_deg", 0.0);
    h.geo.origin_lat_deg = j.value("origin_lat_deg", 0.0);
    h.geo.body_radius_m = j.value("body_radius_m", kMoonRadiusMeters);
  } catch (const json::exception& e) {
    throw RasterError(fmt::format("malformed header '{}': {}", path.string(), e.what()));
  }
  if (h.width <= 0 || h.height <= 0 || !(h.geo.resolution_m > 0.0))
    throw RasterError(fmt::format("malformed header '{}': non-positive dimensions", path.string()));
  return h;
}

std::optional<double> nodata_from_json(const json& j) {
  auto it = j.find("nodata");
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

DemRaster load_grid_binary(const fs::path& path) {
  const json meta = read_json_file(sidecar_path(path));
  const DemHeader h = header_from_json(meta, sidecar_path(path));
  const auto nodata = nodata_from_json(meta);

  std::ifstream in(path, std::ios::binary);
  if (!in) throw RasterError(fmt::format("cannot open '{}'", path.string()));
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto expected = static_cast<std::size_t>(h.width * h.height) * sizeof(float);
  if (bytes.size() != expected)
    throw RasterError(fmt::format("size mismatch in '{}': header says {}x{} ({} bytes), payload has {} bytes",
                                  path.string(), h.width, h.height, expected, bytes.size()));

  Grid<double> values(h.height, h.width);
  for (Eigen::Index i = 0; i < h.width * h.height; ++i) {
    std::uint32_t raw;
    std::memcpy(&raw, bytes.data() + i * 4, 4);
    const float f = std::bit_cast<float>(to_little(raw));
    double v = f;
    if (nodata && (v == *nodata || (std::isnan(*nodata) && std::isnan(v)))) {
      v = std::numeric_limits<double>::quiet_NaN();
    } else if (!std::isfinite(v)) {
      throw RasterError(fmt::format("non-finite value at cell {} in '{}'", i, path.string()));
    }
    values(i / h.width, i % h.width) = v;
  }
  return DemRaster(std::move(values), h.geo, nodata);
}

struct AsciiHeader {
  DemHeader dem;
  std::optional<double> nodata;
};

AsciiHeader read_ascii_header(std::istream& in, const fs::path& path) {
  std::map<std::string, double> fields;
  // Six canonical keys; NODATA_value is optional.
  while (fields.size() < 6) {
    const auto pos = in.tellg();
    std::string key;
    if (!(in >> key)) break;
    std::string lower;
    for (char c : key) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower != "ncols" && lower != "nrows" && lower != "xllcorner" && lower != "yllcorner" &&
        lower != "xllcenter" && lower != "yllcenter" && lower != "cellsize" && lower != "nodata_value") {
      in.clear();
      in.seekg(pos);
      break;
    }
    double v;
    if (!(in >> v)) throw RasterError(fmt::format("malformed header in '{}' at key '{}'", path.string(), key));
    fields[lower] = v;
  }
  for (const char* k : {"ncols", "nrows", "cellsize"})
    if (!fields.count(k)) throw RasterError(fmt::format("malformed header in '{}': missing {}", path.string(), k));

  AsciiHeader h;
  h.dem.width = static_cast<Eigen::Index>(fields["ncols"]);
  h.dem.height = static_cast<Eigen::Index>(fields["nrows"]);
  h.dem.geo.resolution_m = fields["cellsize"];
  if (h.dem.width <= 0 || h.dem.height <= 0 || !(h.dem.geo.resolution_m > 0.0))
    throw RasterError(fmt::format("malformed header in '{}': non-positive dimensions", path.string()));
  if (fields.count("nodata_value")) h.nodata = fields["nodata_value"];

  // ESRI headers carry no planetary georeference; an optional sidecar does.
  const fs::path side = sidecar_path(path);
  if (fs::exists(side)) {
    const json meta = read_json_file(side);
    h.dem.geo.origin_lon_deg = meta.value("origin_lon_deg", 0.0);
    h.dem.geo.origin_lat_deg = meta.value("origin_lat_deg", 0.0);
    h.dem.geo.body_radius_m = meta.value("body_radius_m", kMoonRadiusMeters);
  }
  return h;
}

DemRaster load_ascii_grid(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw RasterError(fmt::format("cannot open '{}'", path.string()));
  const AsciiHeader h = read_ascii_header(in, path);

  Grid<double> values(h.dem.height, h.dem.width);
  const Eigen::Index n = h.dem.width * h.dem.height;
  std::string tok;
  Eigen::Index i = 0;
  while (in >> tok) {
    if (i >= n)
      throw RasterError(fmt::format("size mismatch in '{}': more than {}x{} values", path.string(),
                                    h.dem.width, h.dem.height));
    double v;
    try {
      std::size_t used = 0;
      v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw RasterError(fmt::format("malformed value '{}' in '{}'", tok, path.string()));
    }
    if (h.nodata && v == *h.nodata) {
      v = std::numeric_limits<double>::quiet_NaN();
    } else if (!std::isfinite(v)) {
      throw RasterError(fmt::format("non-finite value at cell {} in '{}'", i, path.string()));
    }
    values(i / h.dem.width, i % h.dem.width) = v;
    ++i;
  }
  if (i != n)
    throw RasterError(fmt::format("size mismatch in '{}': header says {}x{}, payload has {} values",
                                  path.string(), h.dem.width, h.dem.height, i));
  return DemRaster(std::move(values), h.dem.geo, h.nodata);
}

json header_json(const DemRaster& dem) {
  json j;
  j["width"] = dem.width();
  j["height"] = dem.height();
  j["resolution_m"] = dem.geo.resolution_m;
  j["origin_lon_deg"] = dem.geo.origin_lon_deg;
  j["origin_lat_deg"] = dem.geo.origin_lat_deg;
  j["body_radius_m"] = dem.geo.body_radius_m;
  j["nodata"] = dem.nodata ? json(*dem.nodata) : json(nullptr);
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RasterError(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

}  // namespace

DemRaster load_dem(const fs::path& path, DemFormat format) {
  return format == DemFormat::GridBinary ? load_grid_binary(path) : load_ascii_grid(path);
}

DemHeader load_dem_header(const fs::path& path, DemFormat format) {
  if (format == DemFormat::GridBinary) {
    const json meta = read_json_file(sidecar_path(path));
    return header_from_json(meta, sidecar_path(path));
  }
  std::ifstream in(path);
  if (!in) throw RasterError(fmt::format("cannot open '{}'", path.string()));
  return read_ascii_header(in, path).dem;
}

void save_dem(const fs::path& path, const DemRaster& dem, DemFormat format) {
  const bool has_missing = dem.values.isNaN().any();
  if (has_missing && !dem.nodata) throw RasterError("raster has missing cells but no nodata sentinel");

  if (format == DemFormat::GridBinary) {
    std::vector<char> bytes(static_cast<std::size_t>(dem.width() * dem.height()) * 4);
    Eigen::Index i = 0;
    for (Eigen::Index y = 0; y < dem.height(); ++y) {
      for (Eigen::Index x = 0; x < dem.width(); ++x, ++i) {
        const double v = std::isnan(dem.values(y, x)) ? *dem.nodata : dem.values(y, x);
        const std::uint32_t raw = to_little(std::bit_cast<std::uint32_t>(static_cast<float>(v)));
        std::memcpy(bytes.data() + i * 4, &raw, 4);
      }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RasterError(fmt::format("cannot write '{}'", path.string()));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    write_text(sidecar_path(path), header_json(dem).dump(2) + "\n");
    return;
  }

  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "ncols {}\nnrows {}\nxllcorner 0\nyllcorner 0\ncellsize {}\n",
                 dem.width(), dem.height(), dem.geo.resolution_m);
  if (dem.nodata) fmt::format_to(std::back_inserter(buf), "NODATA_value {}\n", *dem.nodata);
  for (Eigen::Index y = 0; y < dem.height(); ++y) {
    for (Eigen::Index x = 0; x < dem.width(); ++x) {
      const double v = std::isnan(dem.values(y, x)) ? *dem.nodata : dem.values(y, x);
      if (x > 0) buf.push_back(' ');
      fmt::format_to(std::back_inserter(buf), "{}", v);
    }
    buf.push_back('\n');
  }
  write_text(path, fmt::to_string(buf));
  json side = header_json(dem);
  write_text(sidecar_path(path), side.dump(2) + "\n");
}

}  // namespace craterrim
