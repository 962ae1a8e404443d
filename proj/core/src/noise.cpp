#include "polartomo/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace polartomo {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t counter) noexcept
    : state_(mix64(seed + kGolden) ^ mix64(counter * kGolden + 0x2545F4914F6CDD1DULL)) {}

CounterRng::result_type CounterRng::operator()() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

void NoiseModel::validate() const {
  if (kind == NoiseKind::none) return;
  if (!(photon_budget > 0.0) || !std::isfinite(photon_budget)) {
    throw std::invalid_argument("noise: photon_budget must be positive");
  }
  if (kind == NoiseKind::poisson_plus_readout && !(readout_sigma >= 0.0)) {
    throw std::invalid_argument("noise: readout_sigma must be non-negative");
  }
}

double sample_counts(double expected, const NoiseModel& noise, std::uint64_t counter) {
  CounterRng rng(noise.seed, counter);
  double counts = 0.0;
  // poisson_distribution requires a strictly positive mean.
  if (expected > 0.0) {
    std::poisson_distribution<long long> poisson(expected);
    counts = static_cast<double>(poisson(rng));
  }
  if (noise.kind == NoiseKind::poisson_plus_readout && noise.readout_sigma > 0.0) {
    std::normal_distribution<double> readout(0.0, noise.readout_sigma);
    counts += readout(rng);
  }
  return counts;
}

PolarizationFrames apply_noise(const PolarizationFrames& frames, const NoiseModel& noise) {
  if (noise.kind == NoiseKind::none) return frames;
  noise.validate();

  PolarizationFrames out = frames;
  out.photon_budget = noise.photon_budget;
  const auto rows = static_cast<std::uint64_t>(frames.gamma_d.rows());
  const auto cols = static_cast<std::uint64_t>(frames.gamma_d.cols());
  const double budget = noise.photon_budget;

  RealMatrix* planes[] = {&out.gamma_d, &out.gamma_a, &out.gamma_r, &out.gamma_l};
  for (std::uint64_t p = 0; p < 4; ++p) {
    RealMatrix& plane = *planes[p];
    for (std::uint64_t j = 0; j < cols; ++j) {
      for (std::uint64_t i = 0; i < rows; ++i) {
        const std::uint64_t counter = (p * cols + j) * rows + i;
        auto& px = plane(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        px = sample_counts(px * budget, noise, counter) / budget;
      }
    }
  }
  return out;
}

const char* to_string(NoiseKind kind) noexcept {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::poisson: return "poisson";
    case NoiseKind::poisson_plus_readout: return "poisson_plus_readout";
  }
  return "none";
}

NoiseKind parse_noise_kind(const std::string& name) {
  if (name == "none") return NoiseKind::none;
  if (name == "poisson") return NoiseKind::poisson;
  if (name == "poisson_plus_readout") return NoiseKind::poisson_plus_readout;
  throw std::invalid_argument("noise: unknown kind '" + name + "'");
}

}  // namespace polartomo
