#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "polartomo/noise.hpp"
#include "polartomo/stategen.hpp"

namespace polartomo {

/// End-to-end run description, read from JSON:
///
///   {
///     "grid": {"n_cells": 128, "extent_mm": 2.0},
///     "mixture": [
///       {"p": 0.22, "kind": "hermite_gauss", "order": 0, "waist_ratio": 0.15},
///       {"p": 0.78, "kind": "phase_poly", "terms": [[1, 1.04]]},
///       ...
///     ],
///     "noise": {"kind": "poisson", "photon_budget": 1e6, "readout_sigma": 0,
///               "seed": 7},
///     "filter_sigma_px": 2.0,
///     "renormalize": true,
///     "outputs": "out",
///     "mosaic": false,
///     "emit_csv": true,
///     "k_max": 3
///   }
///
/// "mixture" may also be the string "phase_only_benchmark" or
/// "hermite_gauss_benchmark". A "raw" component carries
/// "amplitudes": [[re, im], ...]. Unknown keys are rejected.
struct PipelineConfig {
  GridSpec grid{128, 2.0};
  MixtureSpec mixture;
  NoiseModel noise;
  std::optional<std::uint64_t> seed;
  double filter_sigma_px = 0.0;
  bool renormalize = true;
  std::string outputs;
  bool mosaic = false;
  bool emit_csv = false;
  /// 0 means "number of mixture components".
  std::size_t k_max = 0;

  /// Throws StageError("config", ...) on invalid values, including noise
  /// without a seed.
  void validate() const;
  std::size_t effective_k_max() const;
};

/// Command-line overrides; each set field replaces the config value.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool no_renormalize = false;
  std::optional<double> filter_sigma_px;
  /// Also switches noise kind "none" to "poisson".
  std::optional<double> budget;
  bool emit_csv = false;
  bool mosaic = false;
};

/// Throws StageError("config", ...).
PipelineConfig parse_config(const std::string& json_text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Applies overrides and re-validates.
void apply_overrides(PipelineConfig& config, const ConfigOverrides& overrides);

}  // namespace polartomo
