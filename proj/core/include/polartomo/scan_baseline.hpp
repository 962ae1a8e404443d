#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polartomo/noise.hpp"
#include "polartomo/types.hpp"

namespace polartomo {

/// Conventional two-aperture raster scan. Each unordered pair (i, j) is
/// measured once per phase step and mirrored into (j, i); the diagonal
/// comes from single-aperture intensities.
struct ScanPlan {
  std::size_t n_cells = 0;
  std::vector<double> phase_steps = default_phase_steps();
  /// Measure only the single-aperture intensities.
  bool diagonal_only = false;

  /// Nominal cost of the protocol, N^2 * |phase_steps|.
  std::uint64_t measurements_total() const;
  /// Measurements actually simulated (unordered pairs plus diagonal).
  std::uint64_t measurements_simulated() const;

  /// Throws std::invalid_argument on n_cells == 0 or a phase set that cannot
  /// separate Re and Im.
  void validate() const;

  static std::vector<double> default_phase_steps();
  static std::vector<double> four_step_phases();
};

/// Two-point interference intensity I = rho_ii + rho_jj + 2 Re[e^{i phi} rho_ij].
double interference_intensity(const DensityMatrix& rho, std::size_t i, std::size_t j,
                              double phase);

/// Simulates the scan on rho_true and inverts it by least squares in
/// (Re rho_ij, Im rho_ij). With noise, each measurement receives
/// photon_budget / measurements_total() photons of expected exposure.
DensityMatrix scan_reconstruct(const DensityMatrix& rho_true, const ScanPlan& plan,
                               const NoiseModel& noise);

struct ResourceReport {
  std::uint64_t scan_measurements = 0;
  std::uint64_t direct_measurements = 0;
  /// Fraction of the beam passed by two apertures among n cells, min(1, 2/n).
  double scan_photon_efficiency = 0.0;
  /// Camera-based acquisition uses every cell in one exposure.
  double direct_photon_efficiency = 1.0;
};

/// Throws std::invalid_argument for n == 0.
ResourceReport resource_report(std::size_t n);

}  // namespace polartomo
