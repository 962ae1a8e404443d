#pragma once

#include "polartomo/forward.hpp"

namespace polartomo {

/// Direct inversion of the four analyzer images:
///   rho(x1, x2) = Gamma_D(x2,-x1) - Gamma_A(x2,-x1) + i [Gamma_R(x2,-x1) - Gamma_L(x2,-x1)]
/// Raw output: neither hermitized nor trace-normalized.
DensityMatrix reconstruct_density(const PolarizationFrames& frames);

/// (rho + rho^dagger) / 2, written so the result is exactly Hermitian and
/// the operation is bit-exactly idempotent.
DensityMatrix hermitize(const DensityMatrix& rho);

/// rho / Re(Tr rho). Throws std::domain_error when Re(Tr rho) <= 0.
DensityMatrix renormalize_trace(const DensityMatrix& rho);

}  // namespace polartomo
