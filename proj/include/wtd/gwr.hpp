#pragma once

#include "wtd/grid.hpp"

namespace wtd {

struct GwrOptions {
  double ridge = 1e-8;         // stabilizer on the slope normal equation
  bool allow_fallback = true;  // degenerate coverage: weighted-mean fallback vs error
  int min_regression_points = 3;
  double window_bandwidths = 3.0;  // search radius as a multiple of the bandwidth
};

// Downscales a coarse grid to the fine DEM lattice with geographically
// weighted regression: around each fine cell, coarse values are regressed on
// coarse-scale elevation under a Gaussian distance kernel (bandwidth in
// coarse cells) and the local fit is evaluated at the fine cell's elevation.
// Fine cells with fewer than min_regression_points valid coarse neighbours
// fall back to bilinear interpolation; with no interpolable neighbour either
// the Gaussian-weighted window mean is used (allow_fallback) or
// InsufficientCoverage is thrown. An empty window always throws.
Grid gwr_downscale(const Grid& coarse, const Grid& dem_fine, double bandwidth_cells,
                   const GwrOptions& opts = {});

// Mean of fine cells whose centers fall in each coarse cell (nodata-aware).
// Exposed because gwr_downscale regresses against this aggregate.
Grid aggregate_mean_to(const Grid& fine, const Grid& coarse_like);

}  // namespace wtd
