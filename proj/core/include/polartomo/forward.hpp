#pragma once

#include <optional>

#include "polartomo/types.hpp"

namespace polartomo {

/// The four analyzer images on the camera plane. Element (i, j) is the pixel
/// at x = position(i), y = position(j).
struct PolarizationFrames {
  RealMatrix gamma_d;
  RealMatrix gamma_a;
  RealMatrix gamma_r;
  RealMatrix gamma_l;
  GridSpec grid;
  std::optional<double> photon_budget;
};

/// Expectation images of the D/A/R/L projectors after the polarization
/// dependent 90 degree rotation, evaluated in closed form from rho:
///   Gamma_{D,A}(x,y) = 1/4 [rho(-y,-y) + rho(x,x) +/- 2 Re rho(-y,x)]
///   Gamma_{R,L}(x,y) = 1/4 [rho(-y,-y) + rho(x,x) +/- 2 Im rho(-y,x)]
/// Throws std::invalid_argument on a grid mismatch or when rho is not
/// Hermitian within 1e-9.
PolarizationFrames forward_frames(const DensityMatrix& rho, const GridSpec& grid);

/// Interleaves the frames into 2x2 superpixels laid out as
///   [D R]
///   [L A]
/// giving a 2N x 2N image.
RealMatrix to_mosaic(const PolarizationFrames& frames);

/// Inverse of to_mosaic. Throws std::invalid_argument on odd dimensions or
/// a size that does not match the grid.
PolarizationFrames from_mosaic(const RealMatrix& mosaic, const GridSpec& grid);

/// max |Gamma_D + Gamma_A - Gamma_R - Gamma_L| over all pixels.
double frame_sum_defect(const PolarizationFrames& frames);

}  // namespace polartomo
