#pragma once

#include <complex>

#include <Eigen/Dense>

#include "polartomo/grid.hpp"

namespace polartomo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Length-N complex amplitudes on a grid, discretely normalized:
/// sum_j |psi_j|^2 == 1.
struct PureStateVector {
  ComplexVector amplitudes;
  GridSpec grid;
};

/// N x N complex matrix in the position basis. Hermiticity and unit trace
/// are not enforced: raw reconstructions violate both. See diagnostics().
struct DensityMatrix {
  ComplexMatrix elements;
  GridSpec grid;

  std::size_t dim() const noexcept { return grid.n_cells(); }
};

}  // namespace polartomo
