#include "wtd/grid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wtd {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }

}  // namespace

Grid Grid::filled(int rows, int cols, double value, double origin_lon, double origin_lat,
                  double cell_size, double nodata) {
  Grid g;
  g.origin_lon = origin_lon;
  g.origin_lat = origin_lat;
  g.cell_size = cell_size;
  g.n_rows = rows;
  g.n_cols = cols;
  g.nodata = nodata;
  g.values.assign(static_cast<size_t>(rows) * cols, value);
  g.validate();
  return g;
}

std::optional<std::pair<int, int>> Grid::cell_of(double lon, double lat) const {
  int c = static_cast<int>(std::floor((lon - origin_lon) / cell_size));
  int r = static_cast<int>(std::floor((origin_lat - lat) / cell_size));
  if (!in_bounds(r, c)) return std::nullopt;
  return std::make_pair(r, c);
}

double Grid::cell_area_km2(int r) const {
  const double side_km = cell_size * (kMetersPerDegree / 1000.0);
  return side_km * side_km * std::cos(deg2rad(center_lat(r)));
}

size_t Grid::count_valid() const {
  size_t n = 0;
  for (double v : values)
    if (!is_nodata(v)) ++n;
  return n;
}

void Grid::validate() const {
  if (n_rows < 1 || n_cols < 1)
    throw Error(ErrorKind::InvalidArgument, "grid must have at least one row and column");
  if (!(cell_size > 0.0))
    throw Error(ErrorKind::InvalidArgument, "grid cell_size must be positive");
  if (values.size() != static_cast<size_t>(n_rows) * n_cols)
    throw Error(ErrorKind::InvalidArgument, "grid value count does not match shape");
}

bool same_lattice(const Grid& a, const Grid& b) {
  const double tol = 1e-9 * std::max(a.cell_size, b.cell_size);
  return a.n_rows == b.n_rows && a.n_cols == b.n_cols &&
         std::abs(a.cell_size - b.cell_size) <= tol &&
         std::abs(a.origin_lon - b.origin_lon) <= tol &&
         std::abs(a.origin_lat - b.origin_lat) <= tol;
}

void require_same_lattice(const Grid& a, const Grid& b, const std::string& what) {
  if (!same_lattice(a, b)) throw Error(ErrorKind::AlignmentError, what + ": grids not aligned");
}

OffsetReport measure_offset(const Grid& g, const GridAlignment& a) {
  const double fx = (g.origin_lon - a.reference_origin_lon) / a.reference_cell_size;
  const double fy = (g.origin_lat - a.reference_origin_lat) / a.reference_cell_size;
  OffsetReport r;
  r.whole_cells_x = std::lround(fx);
  r.whole_cells_y = std::lround(fy);
  r.fractional_x = fx - static_cast<double>(r.whole_cells_x);
  r.fractional_y = fy - static_cast<double>(r.whole_cells_y);
  return r;
}

Grid align_to_reference(const Grid& g, const GridAlignment& a) {
  g.validate();
  if (a.max_offset_tolerance < 0.0 || a.max_offset_tolerance > 0.5)
    throw Error(ErrorKind::InvalidArgument, "max_offset_tolerance must be in [0, 0.5]");
  const double rel = std::abs(g.cell_size - a.reference_cell_size) / a.reference_cell_size;
  if (rel > 1e-9)
    throw Error(ErrorKind::CellSizeMismatch,
                "cell size " + format_double(g.cell_size) + " vs reference " +
                    format_double(a.reference_cell_size));

  const OffsetReport off = measure_offset(g, a);
  const double slack = 1e-9;
  if (std::abs(off.fractional_x) > a.max_offset_tolerance + slack ||
      std::abs(off.fractional_y) > a.max_offset_tolerance + slack)
    throw Error(ErrorKind::OffsetTooLarge,
                "fractional offset (" + format_double(off.fractional_x) + ", " +
                    format_double(off.fractional_y) + ") cells exceeds tolerance " +
                    format_double(a.max_offset_tolerance));

  Grid out;
  out.origin_lon = a.reference_origin_lon;
  out.origin_lat = a.reference_origin_lat;
  out.cell_size = a.reference_cell_size;
  out.n_rows = g.n_rows;
  out.n_cols = g.n_cols;
  out.nodata = g.nodata;
  out.values.assign(g.values.size(), g.nodata);

  // Input cell (r, c) sits kx cells east and ky cells north of the reference
  // origin relative to its own frame; it lands at (r - ky, c + kx).
  const long kx = off.whole_cells_x;
  const long ky = off.whole_cells_y;
  for (int r = 0; r < g.n_rows; ++r) {
    const long ro = r - ky;
    if (ro < 0 || ro >= g.n_rows) continue;
    for (int c = 0; c < g.n_cols; ++c) {
      const long co = c + kx;
      if (co < 0 || co >= g.n_cols) continue;
      out.at(static_cast<int>(ro), static_cast<int>(co)) = g.at(r, c);
    }
  }
  return out;
}

Grid aggregate_max(const Grid& fine, int factor, bool pad_partial) {
  fine.validate();
  if (factor < 1) throw Error(ErrorKind::InvalidArgument, "aggregation factor must be >= 1");
  if (!pad_partial && (fine.n_rows % factor != 0 || fine.n_cols % factor != 0))
    throw Error(ErrorKind::NonDivisibleShape,
                "factor " + std::to_string(factor) + " does not divide " +
                    std::to_string(fine.n_rows) + "x" + std::to_string(fine.n_cols));

  Grid out;
  out.origin_lon = fine.origin_lon;
  out.origin_lat = fine.origin_lat;
  out.cell_size = fine.cell_size * factor;
  out.n_rows = (fine.n_rows + factor - 1) / factor;
  out.n_cols = (fine.n_cols + factor - 1) / factor;
  out.nodata = fine.nodata;
  out.values.assign(static_cast<size_t>(out.n_rows) * out.n_cols, fine.nodata);

  for (int R = 0; R < out.n_rows; ++R) {
    for (int C = 0; C < out.n_cols; ++C) {
      double best = fine.nodata;
      bool any = false;
      const int r1 = std::min((R + 1) * factor, fine.n_rows);
      const int c1 = std::min((C + 1) * factor, fine.n_cols);
      for (int r = R * factor; r < r1; ++r) {
        for (int c = C * factor; c < c1; ++c) {
          const double v = fine.at(r, c);
          if (fine.is_nodata(v)) continue;
          if (!any || v > best) best = v;
          any = true;
        }
      }
      if (any) out.at(R, C) = best;
    }
  }
  return out;
}

Grid compute_slope(const Grid& dem) {
  dem.validate();
  if (dem.n_rows < 3 || dem.n_cols < 3)
    throw Error(ErrorKind::InvalidArgument, "slope needs at least a 3x3 DEM");

  Grid out = dem;
  const double dy_m = dem.cell_size * kMetersPerDegree;
  for (int r = 0; r < dem.n_rows; ++r) {
    const double dx_m = dem.cell_size * kMetersPerDegree *
                        std::cos(deg2rad(dem.center_lat(r)));
    const int ru = std::max(r - 1, 0);
    const int rd = std::min(r + 1, dem.n_rows - 1);
    for (int c = 0; c < dem.n_cols; ++c) {
      const int cl = std::max(c - 1, 0);
      const int cr = std::min(c + 1, dem.n_cols - 1);
      bool ok = true;
      for (int rr = ru; rr <= rd && ok; ++rr)
        for (int cc = cl; cc <= cr && ok; ++cc)
          if (!dem.valid_at(rr, cc)) ok = false;
      if (!ok) {
        out.at(r, c) = dem.nodata;
        continue;
      }
      // Horn weights (1,2,1); the denominator shrinks to a one-sided span at
      // borders where cl/cr (ru/rd) collapse onto the cell itself.
      const double gx = (dem.at(ru, cr) + 2.0 * dem.at(r, cr) + dem.at(rd, cr)) -
                        (dem.at(ru, cl) + 2.0 * dem.at(r, cl) + dem.at(rd, cl));
      const double gy = (dem.at(rd, cl) + 2.0 * dem.at(rd, c) + dem.at(rd, cr)) -
                        (dem.at(ru, cl) + 2.0 * dem.at(ru, c) + dem.at(ru, cr));
      const double dzdx = gx / (4.0 * (cr - cl) * dx_m);
      const double dzdy = gy / (4.0 * (rd - ru) * dy_m);
      out.at(r, c) = std::atan(std::sqrt(dzdx * dzdx + dzdy * dzdy)) * 180.0 / kPi;
    }
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  const char* p = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(p, &end);
  if (end == p) throw Error(ErrorKind::ParseError, "not a number: '" + s + "'");
  return v;
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

Grid read_ascii_grid(std::istream& in) {
  Grid g;
  double xll = 0.0, yll = 0.0;
  bool have[5] = {false, false, false, false, false};
  g.nodata = kDefaultNodata;

  // Header: key value lines until the first purely numeric row.
  std::string line;
  std::streampos data_start = in.tellg();
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) {
      data_start = in.tellg();
      continue;
    }
    const std::string k = lower(key);
    std::string value;
    if (k == "ncols" || k == "nrows" || k == "xllcorner" || k == "yllcorner" ||
        k == "cellsize" || k == "nodata_value") {
      if (!(ls >> value)) throw Error(ErrorKind::ParseError, "missing value for " + key);
      if (k == "ncols") { g.n_cols = std::stoi(value); have[0] = true; }
      else if (k == "nrows") { g.n_rows = std::stoi(value); have[1] = true; }
      else if (k == "xllcorner") { xll = parse_double(value); have[2] = true; }
      else if (k == "yllcorner") { yll = parse_double(value); have[3] = true; }
      else if (k == "cellsize") { g.cell_size = parse_double(value); have[4] = true; }
      else g.nodata = parse_double(value);
      data_start = in.tellg();
    } else {
      break;  // first data row
    }
  }
  for (bool h : have)
    if (!h) throw Error(ErrorKind::ParseError, "incomplete ascii grid header");

  g.origin_lon = xll;
  g.origin_lat = yll + g.n_rows * g.cell_size;
  g.values.reserve(static_cast<size_t>(g.n_rows) * g.n_cols);

  in.clear();
  in.seekg(data_start);
  std::string tok;
  while (in >> tok) g.values.push_back(parse_double(tok));
  if (g.values.size() != static_cast<size_t>(g.n_rows) * g.n_cols)
    throw Error(ErrorKind::ParseError,
                "expected " + std::to_string(static_cast<size_t>(g.n_rows) * g.n_cols) +
                    " values, got " + std::to_string(g.values.size()));
  g.validate();
  return g;
}

Grid read_ascii_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open grid file: " + path);
  return read_ascii_grid(in);
}

void write_ascii_grid(const Grid& g, std::ostream& out) {
  g.validate();
  out << "ncols " << g.n_cols << "\n";
  out << "nrows " << g.n_rows << "\n";
  out << "xllcorner " << format_double(g.origin_lon) << "\n";
  out << "yllcorner " << format_double(g.origin_lat - g.n_rows * g.cell_size) << "\n";
  out << "cellsize " << format_double(g.cell_size) << "\n";
  out << "nodata_value " << format_double(g.nodata) << "\n";
  for (int r = 0; r < g.n_rows; ++r) {
    for (int c = 0; c < g.n_cols; ++c) {
      if (c) out << ' ';
      out << format_double(g.at(r, c));
    }
    out << '\n';
  }
}

void write_ascii_grid_file(const Grid& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write grid file: " + path);
  write_ascii_grid(g, out);
  if (!out) throw Error(ErrorKind::IoError, "short write: " + path);
}

}  // namespace wtd
