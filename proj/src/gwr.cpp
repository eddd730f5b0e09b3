#include "wtd/gwr.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wtd {

Grid aggregate_mean_to(const Grid& fine, const Grid& coarse_like) {
  Grid out = coarse_like;
  std::vector<double> sum(out.size(), 0.0);
  std::vector<uint32_t> cnt(out.size(), 0);
  for (int r = 0; r < fine.n_rows; ++r) {
    for (int c = 0; c < fine.n_cols; ++c) {
      if (!fine.valid_at(r, c)) continue;
      auto cell = out.cell_of(fine.center_lon(c), fine.center_lat(r));
      if (!cell) continue;
      const size_t i = static_cast<size_t>(cell->first) * out.n_cols + cell->second;
      sum[i] += fine.at(r, c);
      cnt[i] += 1;
    }
  }
  for (size_t i = 0; i < out.size(); ++i)
    out.values[i] = cnt[i] ? sum[i] / cnt[i] : out.nodata;
  return out;
}

namespace {

// Bilinear value among the four coarse cell centers surrounding (gx, gy)
// (cell-center coordinates); weights renormalized over valid cells.
bool bilinear(const Grid& coarse, double gx, double gy, double* out) {
  const int c0 = static_cast<int>(std::floor(gx));
  const int r0 = static_cast<int>(std::floor(gy));
  const double fx = gx - c0;
  const double fy = gy - r0;
  const double w[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
  const int rr[4] = {r0, r0, r0 + 1, r0 + 1};
  const int cc[4] = {c0, c0 + 1, c0, c0 + 1};
  double acc = 0.0, wsum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!coarse.in_bounds(rr[i], cc[i]) || !coarse.valid_at(rr[i], cc[i])) continue;
    acc += w[i] * coarse.at(rr[i], cc[i]);
    wsum += w[i];
  }
  if (wsum <= 0.0) return false;
  *out = acc / wsum;
  return true;
}

}  // namespace

Grid gwr_downscale(const Grid& coarse, const Grid& dem_fine, double bandwidth_cells,
                   const GwrOptions& opts) {
  coarse.validate();
  dem_fine.validate();
  if (!(bandwidth_cells > 0.0))
    throw Error(ErrorKind::InvalidArgument, "gwr bandwidth must be positive");

  const Grid elev_coarse = aggregate_mean_to(dem_fine, coarse);
  const double radius = opts.window_bandwidths * bandwidth_cells;
  const int reach = static_cast<int>(std::ceil(radius)) + 1;

  Grid out = dem_fine;
  std::fill(out.values.begin(), out.values.end(), dem_fine.nodata);

  for (int fr = 0; fr < dem_fine.n_rows; ++fr) {
    for (int fc = 0; fc < dem_fine.n_cols; ++fc) {
      if (!dem_fine.valid_at(fr, fc)) continue;
      const double lon = dem_fine.center_lon(fc);
      const double lat = dem_fine.center_lat(fr);
      // position in coarse cell-center coordinates
      const double gx = (lon - coarse.origin_lon) / coarse.cell_size - 0.5;
      const double gy = (coarse.origin_lat - lat) / coarse.cell_size - 0.5;

      const int r0 = std::max(0, static_cast<int>(std::floor(gy)) - reach);
      const int r1 = std::min(coarse.n_rows - 1, static_cast<int>(std::ceil(gy)) + reach);
      const int c0 = std::max(0, static_cast<int>(std::floor(gx)) - reach);
      const int c1 = std::min(coarse.n_cols - 1, static_cast<int>(std::ceil(gx)) + reach);

      // Gaussian-weighted sums for the local regression of value on elevation.
      double sw = 0, swz = 0, swv = 0;
      size_t n_pts = 0;
      std::vector<double> ws, zs, vs;
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
          if (!coarse.valid_at(r, c) || !elev_coarse.valid_at(r, c)) continue;
          const double dx = c - gx;
          const double dy = r - gy;
          const double d2 = dx * dx + dy * dy;
          if (d2 > radius * radius) continue;
          const double w = std::exp(-0.5 * d2 / (bandwidth_cells * bandwidth_cells));
          ws.push_back(w);
          zs.push_back(elev_coarse.at(r, c));
          vs.push_back(coarse.at(r, c));
          sw += w;
          swz += w * zs.back();
          swv += w * vs.back();
          ++n_pts;
        }
      }

      if (n_pts == 0)
        throw Error(ErrorKind::InsufficientCoverage,
                    "no valid coarse cell within " + format_double(radius) +
                        " cells of fine cell (" + std::to_string(fr) + "," +
                        std::to_string(fc) + ")");

      if (n_pts >= static_cast<size_t>(opts.min_regression_points)) {
        const double zbar = swz / sw;
        const double vbar = swv / sw;
        double szz = 0, szv = 0;
        for (size_t i = 0; i < n_pts; ++i) {
          const double dz = zs[i] - zbar;
          szz += ws[i] * dz * dz;
          szv += ws[i] * dz * (vs[i] - vbar);
        }
        const double slope = szv / (szz + opts.ridge);
        out.at(fr, fc) = vbar + slope * (dem_fine.at(fr, fc) - zbar);
        continue;
      }

      double v;
      if (bilinear(coarse, gx, gy, &v)) {
        out.at(fr, fc) = v;
      } else if (opts.allow_fallback) {
        out.at(fr, fc) = swv / sw;  // Gaussian-weighted window mean
      } else {
        throw Error(ErrorKind::InsufficientCoverage,
                    "fewer than " + std::to_string(opts.min_regression_points) +
                        " coarse neighbours and no interpolable cell at fine cell (" +
                        std::to_string(fr) + "," + std::to_string(fc) + ")");
      }
    }
  }
  return out;
}

}  // namespace wtd
