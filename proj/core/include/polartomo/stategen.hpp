#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "polartomo/types.hpp"

namespace polartomo {

/// One term c * (x/a)^power of a phase polynomial; c is in units of pi.
struct PhaseTerm {
  int power = 1;
  double coefficient = 0.0;
};

/// psi(x) = exp(i pi sum_p c_p (x/a)^p) with uniform modulus on the aperture.
struct PhasePolyMode {
  std::vector<PhaseTerm> terms;
};

/// 1D Hermite-Gauss mode of order m with waist w0 = waist_ratio * extent.
struct HermiteGaussMode {
  int order = 0;
  double waist_ratio = 0.15;
};

/// User-supplied amplitudes; renormalized to unit discrete norm on use.
struct RawMode {
  std::vector<Complex> amplitudes;
};

using ModeDescriptor = std::variant<PhasePolyMode, HermiteGaussMode, RawMode>;

struct MixtureComponent {
  double probability = 0.0;
  ModeDescriptor mode;
};

struct MixtureSpec {
  std::vector<MixtureComponent> components;

  /// Throws std::invalid_argument unless every p_k > 0 and sum p_k == 1
  /// within 1e-9.
  void validate() const;
};

/// Physicists' Hermite polynomial H_m(u) by the three-term recurrence.
double hermite_polynomial(int m, double u);

/// sum_p c_p u^p, the phase in units of pi at reduced position u = x/a.
double phase_polynomial(const std::vector<PhaseTerm>& terms, double u);

PureStateVector eval_phase_poly_state(const std::vector<PhaseTerm>& terms,
                                      const GridSpec& grid);

/// Samples HG_m on the grid and renormalizes to unit discrete norm.
/// Rejects orders whose width 2 w0 sqrt(m+1) exceeds the extent; warns on
/// stderr when the pitch exceeds w0/4.
PureStateVector eval_hg_state(int order, double waist_ratio, const GridSpec& grid);

PureStateVector eval_mode(const ModeDescriptor& mode, const GridSpec& grid);

/// rho = sum_k p_k |psi_k><psi_k|, symmetrized so rho == rho^dagger exactly.
DensityMatrix assemble_density_matrix(const MixtureSpec& mix, const GridSpec& grid);

/// Same, from already-evaluated states.
DensityMatrix assemble_density_matrix(const std::vector<double>& probabilities,
                                      const std::vector<PureStateVector>& states);

std::vector<PureStateVector> eval_mixture_states(const MixtureSpec& mix,
                                                 const GridSpec& grid);

/// G_kl = <psi_k|psi_l>.
ComplexMatrix gram_matrix(const std::vector<PureStateVector>& states);

/// Three phase-only states, p = (0.21, 0.30, 0.49).
MixtureSpec phase_only_benchmark_mixture();

/// HG_0, HG_1, HG_2 at w0 = 0.15 a, p = (0.22, 0.33, 0.45).
MixtureSpec hermite_gauss_benchmark_mixture();

}  // namespace polartomo
