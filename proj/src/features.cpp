#include "wtd/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "wtd/csv.hpp"

namespace wtd {

namespace {
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void DailyClimateSeries::validate() const {
  if (dates.size() != precipitation.size() || dates.size() != temperature.size())
    throw Error(ErrorKind::LengthMismatch, "daily series fields have unequal lengths");
  for (double p : precipitation)
    if (p < 0.0) throw Error(ErrorKind::InvalidArgument, "negative daily precipitation");
  for (size_t i = 1; i < dates.size(); ++i)
    if (dates[i] < dates[i - 1])
      throw Error(ErrorKind::InvalidArgument, "daily series dates not ordered");
}

Grid compute_aridity(const Grid& pet, const Grid& p) {
  require_same_lattice(pet, p, "compute_aridity");
  Grid out = pet;
  for (size_t i = 0; i < out.size(); ++i) {
    if (pet.is_nodata(pet.values[i]) || p.is_nodata(p.values[i]) || p.values[i] == 0.0)
      out.values[i] = out.nodata;
    else
      out.values[i] = pet.values[i] / p.values[i];
  }
  return out;
}

Grid compute_precip_excess(const Grid& p, const Grid& aet) {
  require_same_lattice(p, aet, "compute_precip_excess");
  Grid out = p;
  for (size_t i = 0; i < out.size(); ++i) {
    if (p.is_nodata(p.values[i]) || aet.is_nodata(aet.values[i]))
      out.values[i] = out.nodata;
    else
      out.values[i] = p.values[i] - aet.values[i];
  }
  return out;
}

double compute_snow_fraction(const DailyClimateSeries& s) {
  s.validate();
  double total = 0.0, snow = 0.0;
  for (size_t i = 0; i < s.precipitation.size(); ++i) {
    total += s.precipitation[i];
    if (s.temperature[i] < 0.0) snow += s.precipitation[i];
  }
  if (total <= 0.0) throw Error(ErrorKind::ZeroPrecipitation, "total precipitation is zero");
  return snow / total;
}

double compute_rainfall_intensity(const DailyClimateSeries& s) {
  s.validate();
  double sum = 0.0;
  size_t n = 0;
  for (double p : s.precipitation) {
    if (p > 1.0) {
      sum += p;
      ++n;
    }
  }
  return n ? sum / n : kNaN;
}

const char* land_cover_name(LandCover c) {
  switch (c) {
    case LandCover::Forest: return "forest";
    case LandCover::Shrubland: return "shrubland";
    case LandCover::Grassland: return "grassland";
    case LandCover::Cropland: return "cropland";
    case LandCover::Urban: return "urban";
    case LandCover::Wetland: return "wetland";
    case LandCover::BarrenWaterOther: return "barren_water";
  }
  return "unknown";
}

LandCover reclass_landcover_code(int code17) {
  switch (code17) {
    case 1: case 2: case 3: case 4: case 5:  // the five forest classes
      return LandCover::Forest;
    case 6: case 7:  // closed/open shrubland
      return LandCover::Shrubland;
    case 8: case 9: case 10:  // savannas and grassland
      return LandCover::Grassland;
    case 12: case 14:  // cropland and cropland/natural mosaic
      return LandCover::Cropland;
    case 13:
      return LandCover::Urban;
    case 11:
      return LandCover::Wetland;
    case 15: case 16: case 17:  // snow/ice, barren, water
      return LandCover::BarrenWaterOther;
    default:
      throw Error(ErrorKind::UnknownClassCode, "land cover code " + std::to_string(code17));
  }
}

Grid reclass_landcover(const Grid& lc17) {
  Grid out = lc17;
  for (size_t i = 0; i < out.size(); ++i) {
    if (lc17.is_nodata(lc17.values[i])) {
      out.values[i] = out.nodata;
      continue;
    }
    const double v = lc17.values[i];
    const int code = static_cast<int>(std::lround(v));
    if (std::abs(v - code) > 1e-9)
      throw Error(ErrorKind::UnknownClassCode, "non-integer land cover code " + format_double(v));
    out.values[i] = static_cast<double>(static_cast<int>(reclass_landcover_code(code)));
  }
  return out;
}

Grid compute_max_swe(const std::vector<Grid>& monthly, int months_per_year) {
  if (monthly.empty()) throw Error(ErrorKind::EmptyInput, "no monthly SWE grids");
  if (months_per_year < 1 || monthly.size() % static_cast<size_t>(months_per_year) != 0)
    throw Error(ErrorKind::NonDivisibleShape, "monthly grid count not a whole number of years");
  for (size_t i = 1; i < monthly.size(); ++i)
    require_same_lattice(monthly[0], monthly[i], "compute_max_swe");

  const size_t n_years = monthly.size() / months_per_year;
  Grid out = monthly[0];
  for (size_t i = 0; i < out.size(); ++i) {
    double sum = 0.0;
    size_t years = 0;
    for (size_t y = 0; y < n_years; ++y) {
      double ymax = 0.0;
      bool any = false;
      for (int m = 0; m < months_per_year; ++m) {
        const Grid& g = monthly[y * months_per_year + m];
        if (g.is_nodata(g.values[i])) continue;
        if (!any || g.values[i] > ymax) ymax = g.values[i];
        any = true;
      }
      if (any) {
        sum += ymax;
        ++years;
      }
    }
    out.values[i] = years ? sum / years : out.nodata;
  }
  return out;
}

const std::vector<std::string>& FeatureTable::feature_columns() {
  static const std::vector<std::string> cols = {
      "precipitation", "temperature", "january_temperature", "rainfall_intensity",
      "max_swe", "snow_fraction", "aridity_index", "precipitation_excess",
      "pet", "aet", "elevation", "slope", "topographic_index",
      "sand_shallow", "silt_shallow", "clay_shallow",
      "sand_deep", "silt_deep", "clay_deep", "depth_to_bedrock",
      "lc_forest", "lc_shrubland", "lc_grassland", "lc_cropland",
      "lc_urban", "lc_wetland", "lc_barren_water",
  };
  return cols;
}

const std::vector<std::string>& FeatureTable::model_feature_columns() {
  return feature_columns();
}

const std::vector<std::string>& mandatory_layer_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : FeatureTable::feature_columns())
      if (c.rfind("lc_", 0) != 0) v.push_back(c);
    v.push_back("land_cover");
    return v;
  }();
  return names;
}

size_t FeatureTable::col_index(const std::string& name) const {
  const auto& cols = feature_columns();
  for (size_t i = 0; i < cols.size(); ++i)
    if (cols[i] == name) return i;
  throw Error(ErrorKind::MissingColumn, "feature column not found: " + name);
}

int64_t FeatureTable::row_of(int64_t pixel_id) const {
  if (row_index_.empty() && !pixel_ids.empty()) {
    for (size_t i = 0; i < pixel_ids.size(); ++i)
      row_index_[pixel_ids[i]] = static_cast<int64_t>(i);
  }
  auto it = row_index_.find(pixel_id);
  return it == row_index_.end() ? -1 : it->second;
}

void FeatureTable::validate() const {
  const auto& cols = feature_columns();
  if (columns.size() != cols.size())
    throw Error(ErrorKind::InvalidArgument, "feature table column count mismatch");
  for (const auto& c : columns)
    if (c.size() != n_rows())
      throw Error(ErrorKind::LengthMismatch, "feature column length mismatch");
  if (latitude.size() != n_rows())
    throw Error(ErrorKind::LengthMismatch, "latitude length mismatch");
  if (n_rows() == 0) return;

  for (size_t i = 0; i < columns.size(); ++i) {
    bool any_finite = false;
    for (double v : columns[i])
      if (std::isfinite(v)) {
        any_finite = true;
        break;
      }
    if (!any_finite)
      throw Error(ErrorKind::InvalidArgument, "feature column entirely nodata: " + cols[i]);
  }

  const size_t lc0 = col_index("lc_forest");
  for (size_t r = 0; r < n_rows(); ++r) {
    double s = 0.0;
    for (int k = 0; k < kNumLandCoverClasses; ++k) s += columns[lc0 + k][r];
    if (s != 1.0)
      throw Error(ErrorKind::InvalidArgument,
                  "land cover indicators must sum to 1 (row " + std::to_string(r) + ")");
  }

  auto check_range = [&](const std::string& name, double lo, double hi) {
    for (double v : col(name))
      if (std::isfinite(v) && (v < lo || v > hi))
        throw Error(ErrorKind::InvalidArgument, name + " out of range: " + format_double(v));
  };
  for (const char* f : {"sand_shallow", "silt_shallow", "clay_shallow", "sand_deep",
                        "silt_deep", "clay_deep"})
    check_range(f, 0.0, 100.0);
  check_range("snow_fraction", 0.0, 1.0);
  for (double v : col("aridity_index"))
    if (std::isfinite(v) && v < 0.0)
      throw Error(ErrorKind::InvalidArgument, "negative aridity index");
}

void FeatureTable::to_csv(std::ostream& out) const {
  out << "pixel_id";
  for (const auto& c : feature_columns()) out << ',' << c;
  out << ",latitude\n";
  for (size_t r = 0; r < n_rows(); ++r) {
    out << pixel_ids[r];
    for (const auto& c : columns) out << ',' << format_double(c[r]);
    out << ',' << format_double(latitude[r]) << '\n';
  }
}

FeatureTable FeatureTable::from_csv(std::istream& in) {
  CsvTable t = read_csv(in);
  const auto& cols = feature_columns();
  if (t.header.size() != cols.size() + 2 || t.header.front() != "pixel_id" ||
      t.header.back() != "latitude")
    throw Error(ErrorKind::ParseError, "unexpected feature csv header");
  for (size_t i = 0; i < cols.size(); ++i)
    if (t.header[i + 1] != cols[i])
      throw Error(ErrorKind::ParseError, "unexpected feature column order at " + t.header[i + 1]);

  FeatureTable ft;
  ft.columns.assign(cols.size(), {});
  for (auto& row : t.rows) {
    ft.pixel_ids.push_back(std::stoll(row[0]));
    for (size_t i = 0; i < cols.size(); ++i) ft.columns[i].push_back(parse_double(row[i + 1]));
    ft.latitude.push_back(parse_double(row.back()));
  }
  ft.validate();
  return ft;
}

void FeatureTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write feature table: " + path);
  to_csv(out);
}

FeatureTable FeatureTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open feature table: " + path);
  return from_csv(in);
}

FeatureTable assemble_features(const std::map<std::string, Grid>& layers, AssembleStats* stats) {
  const auto& needed = mandatory_layer_names();
  for (const auto& name : needed)
    if (!layers.count(name))
      throw Error(ErrorKind::MissingMandatoryLayer, "missing layer: " + name);

  const Grid& ref = layers.begin()->second;
  for (const auto& [name, g] : layers) require_same_lattice(ref, g, "assemble_features(" + name + ")");

  const Grid& lc = layers.at("land_cover");
  FeatureTable ft;
  const auto& cols = FeatureTable::feature_columns();
  ft.columns.assign(cols.size(), {});
  const size_t lc0 = ft.col_index("lc_forest");

  AssembleStats local;
  local.total_cells = ref.size();
  for (int r = 0; r < ref.n_rows; ++r) {
    for (int c = 0; c < ref.n_cols; ++c) {
      bool ok = true;
      for (const auto& name : needed) {
        const Grid& g = layers.at(name);
        if (!g.valid_at(r, c)) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        ++local.dropped_nodata;
        continue;
      }
      const int lc_class = static_cast<int>(std::lround(lc.at(r, c)));
      if (lc_class < 1 || lc_class > kNumLandCoverClasses)
        throw Error(ErrorKind::UnknownClassCode,
                    "7-class land cover code out of range: " + std::to_string(lc_class));

      ft.pixel_ids.push_back(ref.pixel_id(r, c));
      ft.latitude.push_back(ref.center_lat(r));
      for (size_t i = 0; i < cols.size(); ++i) {
        if (cols[i].rfind("lc_", 0) == 0) {
          const int k = static_cast<int>(i - lc0) + 1;
          ft.columns[i].push_back(k == lc_class ? 1.0 : 0.0);
        } else {
          ft.columns[i].push_back(layers.at(cols[i]).at(r, c));
        }
      }
      ++local.emitted_rows;
    }
  }
  if (stats) *stats = local;
  ft.validate();
  return ft;
}

}  // namespace wtd
