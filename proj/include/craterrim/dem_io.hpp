#ifndef CRATERRIM_DEM_IO_HPP
#define CRATERRIM_DEM_IO_HPP

#include "craterrim/raster.hpp"

#include <filesystem>
#include <string_view>

namespace craterrim {

enum class DemFormat { GridBinary, AsciiGrid };

/// Parses "grid-binary" / "ascii-grid".
DemFormat parse_dem_format(std::string_view name);

/// Guesses the format from the extension (.asc -> ascii-grid, otherwise
/// grid-binary).
DemFormat guess_dem_format(const std::filesystem::path& path);

/// Sidecar path for a grid-binary payload: same basename, ".json".
std::filesystem::path sidecar_path(const std::filesystem::path& payload);

/// Loads a DEM. Nodata cells become NaN. Throws RasterError on malformed
/// headers, payload size mismatches, or non-finite data values.
DemRaster load_dem(const std::filesystem::path& path, DemFormat format);

/// Reads only the georeferencing and dimensions (no payload).
struct DemHeader {
  Eigen::Index width = 0;
  Eigen::Index height = 0;
  GeoReference geo;
};
DemHeader load_dem_header(const std::filesystem::path& path, DemFormat format);

/// Writes a DEM. grid-binary stores little-endian float32, so values are
/// rounded to single precision.
void save_dem(const std::filesystem::path& path, const DemRaster& dem, DemFormat format);

}  // namespace craterrim

#endif  // CRATERRIM_DEM_IO_HPP
