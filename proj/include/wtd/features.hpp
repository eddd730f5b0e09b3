#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wtd/grid.hpp"

namespace wtd {

// Daily precipitation/temperature record used for the snow-fraction and
// rainfall-intensity reductions.
struct DailyClimateSeries {
  std::vector<std::string> dates;  // ISO dates, non-decreasing
  std::vector<double> precipitation;  // mm/day, >= 0
  std::vector<double> temperature;    // degC

  void validate() const;
};

// PET / P, cellwise; P == 0 yields nodata.
Grid compute_aridity(const Grid& pet, const Grid& p);

// P - AET, cellwise (may be negative).
Grid compute_precip_excess(const Grid& p, const Grid& aet);

// Fraction of precipitation falling on below-zero days. Days at exactly
// 0 degC count as rain. Throws ZeroPrecipitation when total P is zero.
double compute_snow_fraction(const DailyClimateSeries& s);

// Mean precipitation across days with more than 1 mm; NaN when no day
// qualifies.
double compute_rainfall_intensity(const DailyClimateSeries& s);

// 7-class land cover codes after merging the 17-class source classes.
enum class LandCover : int {
  Forest = 1,
  Shrubland = 2,
  Grassland = 3,
  Cropland = 4,
  Urban = 5,
  Wetland = 6,
  BarrenWaterOther = 7,
};
constexpr int kNumLandCoverClasses = 7;
const char* land_cover_name(LandCover c);

// Merge table for the 17-class source codes (the five forest classes fold
// into Forest, the two shrubland classes into Shrubland, and so on).
LandCover reclass_landcover_code(int code17);
Grid reclass_landcover(const Grid& lc17);

// Mean over years of the within-year maximum; input is a per-year sequence of
// monthly grids (months_per_year each).
Grid compute_max_swe(const std::vector<Grid>& monthly, int months_per_year = 12);

// Row-per-pixel predictor matrix. Column order is fixed and documented by
// feature_columns(); land cover is one-hot encoded as 7 indicator columns.
// Latitude travels with the table but is not a model feature.
class FeatureTable {
 public:
  // Fixed feature column order (excludes pixel_id and latitude).
  static const std::vector<std::string>& feature_columns();
  // Names of the features the models may be trained on.
  static const std::vector<std::string>& model_feature_columns();

  std::vector<int64_t> pixel_ids;
  std::vector<double> latitude;
  std::vector<std::vector<double>> columns;  // [feature][row]

  size_t n_rows() const { return pixel_ids.size(); }
  size_t n_features() const { return columns.size(); }
  size_t col_index(const std::string& name) const;
  const std::vector<double>& col(const std::string& name) const { return columns[col_index(name)]; }
  std::vector<double>& col(const std::string& name) { return columns[col_index(name)]; }
  // Row index for a pixel id, or -1.
  int64_t row_of(int64_t pixel_id) const;

  void validate() const;

  void to_csv(std::ostream& out) const;
  static FeatureTable from_csv(std::istream& in);
  void save(const std::string& path) const;
  static FeatureTable load(const std::string& path);

 private:
  mutable std::map<int64_t, int64_t> row_index_;  // lazy pixel -> row cache
};

// Names assemble_features expects in its layer map: every feature column
// except the land-cover indicators, plus "land_cover" (7-class codes).
const std::vector<std::string>& mandatory_layer_names();

struct AssembleStats {
  size_t total_cells = 0;
  size_t emitted_rows = 0;
  size_t dropped_nodata = 0;
};

// One row per cell valid in every mandatory layer; rows with any mandatory
// nodata are dropped and counted. All layers must share the reference lattice.
FeatureTable assemble_features(const std::map<std::string, Grid>& layers,
                               AssembleStats* stats = nullptr);

}  // namespace wtd
