#include "polartomo/scan_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace polartomo {

std::vector<double> ScanPlan::default_phase_steps() { return {0.0, std::numbers::pi / 2}; }

std::vector<double> ScanPlan::four_step_phases() {
  constexpr double pi = std::numbers::pi;
  return {0.0, pi / 2, pi, 3 * pi / 2};
}

std::uint64_t ScanPlan::measurements_total() const {
  const auto n = static_cast<std::uint64_t>(n_cells);
  return n * n * static_cast<std::uint64_t>(phase_steps.size());
}

std::uint64_t ScanPlan::measurements_simulated() const {
  const auto n = static_cast<std::uint64_t>(n_cells);
  if (diagonal_only) return n;
  return n + n * (n - 1) / 2 * static_cast<std::uint64_t>(phase_steps.size());
}

void ScanPlan::validate() const {
  if (n_cells == 0) throw std::invalid_argument("scan plan: n_cells must be >= 1");
  if (diagonal_only) return;
  // Normal matrix of the (cos, -sin) design must be non-singular.
  double cc = 0.0, ss = 0.0, cs = 0.0;
  for (double phi : phase_steps) {
    cc += std::cos(phi) * std::cos(phi);
    ss += std::sin(phi) * std::sin(phi);
    cs += std::cos(phi) * std::sin(phi);
  }
  if (cc * ss - cs * cs < 1e-9) {
    throw std::invalid_argument("scan plan: phase steps do not determine Re and Im");
  }
}

double interference_intensity(const DensityMatrix& rho, std::size_t i, std::size_t j,
                              double phase) {
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  return rho.elements(a, a).real() + rho.elements(b, b).real() +
         2.0 * (std::polar(1.0, phase) * rho.elements(a, b)).real();
}

DensityMatrix scan_reconstruct(const DensityMatrix& rho_true, const ScanPlan& plan,
                               const NoiseModel& noise) {
  plan.validate();
  noise.validate();
  const std::size_t n = rho_true.grid.n_cells();
  if (plan.n_cells != n || static_cast<std::size_t>(rho_true.elements.rows()) != n) {
    throw std::invalid_argument("scan: plan size " + std::to_string(plan.n_cells) +
                                " does not match density matrix size " + std::to_string(n));
  }
  const double defect =
      (rho_true.elements - rho_true.elements.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-9) throw std::invalid_argument("scan: input is not Hermitian");

  const bool noisy = noise.kind != NoiseKind::none;
  const double per_measurement =
      noisy ? noise.photon_budget / static_cast<double>(plan.measurements_total()) : 0.0;
  std::uint64_t counter = 0;
  auto measure = [&](double intensity) {
    const std::uint64_t c = counter++;
    if (!noisy) return intensity;
    return sample_counts(intensity * per_measurement, noise, c) / per_measurement;
  };

  const auto ni = static_cast<Eigen::Index>(n);
  ComplexMatrix est = ComplexMatrix::Zero(ni, ni);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = measure(rho_true.elements(static_cast<Eigen::Index>(i),
                                        static_cast<Eigen::Index>(i)).real());
    est(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[i];
  }
  if (plan.diagonal_only) return {std::move(est), rho_true.grid};

  // Least squares for I_k - s = 2 re cos(phi_k) - 2 im sin(phi_k).
  double cc = 0.0, ss = 0.0, cs = 0.0;
  for (double phi : plan.phase_steps) {
    cc += std::cos(phi) * std::cos(phi);
    ss += std::sin(phi) * std::sin(phi);
    cs += std::cos(phi) * std::sin(phi);
  }
  const double det = cc * ss - cs * cs;

  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double s = diag[i] + diag[j];
      double rc = 0.0, rs = 0.0;
      for (double phi : plan.phase_steps) {
        const double excess = measure(interference_intensity(rho_true, i, j, phi)) - s;
        rc += std::cos(phi) * excess;
        rs += std::sin(phi) * excess;
      }
      // [cc -cs; cs -ss] [2re; 2im]^T = [rc; rs]
      const double re = 0.5 * (ss * rc - cs * rs) / det;
      const double im = 0.5 * (cs * rc - cc * rs) / det;
      const Complex v(re, im);
      est(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      est(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(v);
    }
  }
  return {std::move(est), rho_true.grid};
}

ResourceReport resource_report(std::size_t n) {
  if (n == 0) throw std::invalid_argument("resource_report: dimension must be >= 1");
  const auto nn = static_cast<std::uint64_t>(n);
  ResourceReport r;
  r.scan_measurements = 2 * nn * nn;
  r.direct_measurements = 1;
  r.scan_photon_efficiency = std::min(1.0, 2.0 / static_cast<double>(n));
  r.direct_photon_efficiency = 1.0;
  return r;
}

}  // namespace polartomo
