#pragma once

#include <vector>

#include "polartomo/forward.hpp"

namespace polartomo {

/// Normalized 1D Gaussian taps for offsets -R..R, R = ceil(4 sigma).
std::vector<double> gaussian_kernel(double sigma_px);

/// Separable Gaussian blur. Taps falling outside the image are dropped and
/// the remaining weights renormalized, so constants are preserved and there
/// is no wraparound. sigma_px == 0 is the identity.
RealMatrix gaussian_filter(const RealMatrix& image, double sigma_px);

PolarizationFrames gaussian_filter(const PolarizationFrames& frames, double sigma_px);

}  // namespace polartomo
