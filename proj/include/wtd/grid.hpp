#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wtd/error.hpp"

namespace wtd {

constexpr double kDefaultNodata = -9999.0;
constexpr double kMetersPerDegree = 111320.0;  // 111.32 km per degree of arc

// Georeferenced single-band raster. Origin is the upper-left corner of the
// upper-left cell; latitude decreases with row index. Carrier for every
// gridded quantity in the pipeline (WTD, WOP, HAND, climate, soils, ...).
struct Grid {
  double origin_lon = 0.0;
  double origin_lat = 0.0;
  double cell_size = 1.0;  // degrees, uniform per axis
  int n_rows = 0;
  int n_cols = 0;
  double nodata = kDefaultNodata;
  std::vector<double> values;  // row-major, north row first

  static Grid filled(int rows, int cols, double value, double origin_lon = 0.0,
                     double origin_lat = 0.0, double cell_size = 1.0,
                     double nodata = kDefaultNodata);

  size_t size() const { return values.size(); }
  double& at(int r, int c) { return values[static_cast<size_t>(r) * n_cols + c]; }
  double at(int r, int c) const { return values[static_cast<size_t>(r) * n_cols + c]; }
  bool in_bounds(int r, int c) const { return r >= 0 && r < n_rows && c >= 0 && c < n_cols; }

  bool is_nodata(double v) const {
    if (!std::isfinite(v)) return true;
    return std::isnan(nodata) ? false : v == nodata;
  }
  bool valid_at(int r, int c) const { return !is_nodata(at(r, c)); }

  double center_lon(int c) const { return origin_lon + (c + 0.5) * cell_size; }
  double center_lat(int r) const { return origin_lat - (r + 0.5) * cell_size; }

  // Cell containing a lon/lat point, or nullopt when outside the frame.
  std::optional<std::pair<int, int>> cell_of(double lon, double lat) const;

  int64_t pixel_id(int r, int c) const { return static_cast<int64_t>(r) * n_cols + c; }
  std::pair<int, int> rc_of(int64_t pixel) const {
    return {static_cast<int>(pixel / n_cols), static_cast<int>(pixel % n_cols)};
  }

  // Physical cell area, latitude-corrected: (cell_size * 111.32 km)^2 * cos(lat).
  double cell_area_km2(int r) const;
  double cell_area_ha(int r) const { return cell_area_km2(r) * 100.0; }

  size_t count_valid() const;

  // Throws InvalidArgument when shape/value invariants are broken.
  void validate() const;
};

// Two grids share a lattice: same origin, cell size and shape (1e-9 relative).
bool same_lattice(const Grid& a, const Grid& b);
void require_same_lattice(const Grid& a, const Grid& b, const std::string& what);

struct GridAlignment {
  double reference_origin_lon = 0.0;
  double reference_origin_lat = 0.0;
  double reference_cell_size = 1.0;
  double max_offset_tolerance = 0.25;  // fraction of a cell, in [0, 0.5]
};

// Re-expresses g in the frame anchored at the reference origin (same shape):
// content moves by a whole number of cells, the sub-cell residual is absorbed
// by snapping, and cells shifted outside the frame become nodata.
// Throws CellSizeMismatch / OffsetTooLarge.
Grid align_to_reference(const Grid& g, const GridAlignment& a);

// Offset diagnostics for a grid relative to a reference lattice.
struct OffsetReport {
  long whole_cells_x = 0;
  long whole_cells_y = 0;
  double fractional_x = 0.0;  // residual after whole-cell snap, in cells
  double fractional_y = 0.0;
};
OffsetReport measure_offset(const Grid& g, const GridAlignment& a);

// Block-maximum aggregation: each coarse cell is the max over its
// factor x factor fine block, nodata ignored; an all-nodata block stays
// nodata. Without padding the factor must divide both dimensions.
Grid aggregate_max(const Grid& fine, int factor, bool pad_partial = false);

// Slope in degrees from the Horn 3x3 stencil with latitude-corrected cell
// spacing; border cells fall back to one-sided differences.
Grid compute_slope(const Grid& dem);

// Minimal ASCII grid format (ESRI-ASCII compatible): header lines ncols,
// nrows, xllcorner, yllcorner, cellsize, nodata_value followed by row-major
// whitespace-separated values. Doubles round-trip exactly.
Grid read_ascii_grid(std::istream& in);
Grid read_ascii_grid_file(const std::string& path);
void write_ascii_grid(const Grid& g, std::ostream& out);
void write_ascii_grid_file(const Grid& g, const std::string& path);

// Exact decimal formatting helpers (shortest representation that parses back
// to the same double).
std::string format_double(double v);
double parse_double(const std::string& s);

#ifdef WTD_WITH_GEOTIFF
// Reader for uncompressed single-band GeoTIFF rasters (classic TIFF, strip
// layout, float/int samples, ModelPixelScale + ModelTiepoint georeferencing).
Grid read_geotiff_file(const std::string& path);
#endif

}  // namespace wtd
