#pragma once

#include <cstddef>
#include <vector>

#include "polartomo/types.hpp"

namespace polartomo {

/// rho ~= sum_k weights[k] |modes[k]><modes[k]|, modes orthonormal.
struct DecompositionResult {
  /// Signed eigenvalues, ordered by descending magnitude. Negative entries
  /// flag an unphysical reconstruction.
  std::vector<double> weights;
  /// |weights[k]|, i.e. the singular values.
  std::vector<double> singular_values;
  std::vector<PureStateVector> modes;
  /// Frobenius norm of rho minus the retained expansion.
  double residual = 0.0;
};

/// Hermitian eigendecomposition of rho keeping the k_max modes of largest
/// |eigenvalue|; modes are gauge-fixed. Throws std::invalid_argument when
/// rho is not Hermitian within 1e-9 or k_max is outside [1, N].
DecompositionResult decompose_density(const DensityMatrix& rho, std::size_t k_max);

/// Rotates the global phase so the largest-magnitude amplitude (lowest
/// index on ties) is real and positive. Throws on the zero vector.
PureStateVector fix_gauge(const PureStateVector& psi);

/// |<a|b>|^2, clamped to [0, 1].
double mode_fidelity(const PureStateVector& a, const PureStateVector& b);

struct ModeMatch {
  std::size_t theory_index;
  std::size_t recovered_index;
  double fidelity;
};

/// Greedy assignment: each theory mode, in the order given, takes the
/// unassigned recovered mode of highest fidelity.
std::vector<ModeMatch> match_modes(const std::vector<PureStateVector>& theory,
                                   const std::vector<PureStateVector>& recovered);

/// Tr(P_a P_b) / max(dim a, dim b) for the projectors onto the spans of two
/// orthonormal sets. Equals 1 iff the spans coincide; used for degenerate
/// eigenvalue clusters where individual modes are not unique.
double subspace_overlap(const std::vector<PureStateVector>& a,
                        const std::vector<PureStateVector>& b);

}  // namespace polartomo
