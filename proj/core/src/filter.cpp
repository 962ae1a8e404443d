#include "polartomo/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polartomo {

std::vector<double> gaussian_kernel(double sigma_px) {
  if (!(sigma_px >= 0.0) || !std::isfinite(sigma_px)) {
    throw std::invalid_argument("gaussian_filter: sigma must be non-negative");
  }
  if (sigma_px == 0.0) return {1.0};
  const auto radius = static_cast<int>(std::ceil(4.0 * sigma_px));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double w = std::exp(-0.5 * (k * k) / (sigma_px * sigma_px));
    taps[static_cast<std::size_t>(k + radius)] = w;
    total += w;
  }
  for (double& w : taps) w /= total;
  return taps;
}

namespace {

// Convolves along columns (axis 0) of `in`, renormalizing truncated taps.
RealMatrix blur_rows(const RealMatrix& in, const std::vector<double>& taps) {
  const auto radius = static_cast<Eigen::Index>(taps.size() / 2);
  const Eigen::Index rows = in.rows();
  RealMatrix out(rows, in.cols());
  for (Eigen::Index c = 0; c < in.cols(); ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Eigen::Index lo = std::max<Eigen::Index>(0, r - radius);
      const Eigen::Index hi = std::min<Eigen::Index>(rows - 1, r + radius);
      double acc = 0.0;
      double mass = 0.0;
      for (Eigen::Index s = lo; s <= hi; ++s) {
        const double w = taps[static_cast<std::size_t>(s - r + radius)];
        acc += w * in(s, c);
        mass += w;
      }
      out(r, c) = acc / mass;
    }
  }
  return out;
}

}  // namespace

RealMatrix gaussian_filter(const RealMatrix& image, double sigma_px) {
  const auto taps = gaussian_kernel(sigma_px);
  if (taps.size() == 1) return image;
  RealMatrix along_x = blur_rows(image, taps);
  RealMatrix along_y = blur_rows(along_x.transpose(), taps);
  return along_y.transpose();
}

PolarizationFrames gaussian_filter(const PolarizationFrames& frames, double sigma_px) {
  PolarizationFrames out = frames;
  out.gamma_d = gaussian_filter(frames.gamma_d, sigma_px);
  out.gamma_a = gaussian_filter(frames.gamma_a, sigma_px);
  out.gamma_r = gaussian_filter(frames.gamma_r, sigma_px);
  out.gamma_l = gaussian_filter(frames.gamma_l, sigma_px);
  return out;
}

}  // namespace polartomo
