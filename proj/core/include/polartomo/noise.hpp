#pragma once

#include <cstdint>
#include <string>

#include "polartomo/forward.hpp"

namespace polartomo {

enum class NoiseKind { none, poisson, poisson_plus_readout };

struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  /// Scale from expectation image to counts: lambda = Gamma * photon_budget.
  double photon_budget = 0.0;
  /// Gaussian readout noise in counts (poisson_plus_readout only).
  double readout_sigma = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Counter-based generator: the stream for (seed, counter) is fixed, so a
/// pixel's draw does not depend on the order pixels are visited in.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t counter) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept;

 private:
  std::uint64_t state_;
};

/// Draws counts ~ Poisson(Gamma * budget) per pixel (plus N(0, sigma) readout
/// if enabled) and rescales by 1/budget. kind == none returns the input.
PolarizationFrames apply_noise(const PolarizationFrames& frames, const NoiseModel& noise);

/// Draws a single Poisson(expected) count, plus readout noise, on the stream
/// (seed, counter). Shared with the scanning simulator.
double sample_counts(double expected, const NoiseModel& noise, std::uint64_t counter);

const char* to_string(NoiseKind kind) noexcept;
NoiseKind parse_noise_kind(const std::string& name);

}  // namespace polartomo
