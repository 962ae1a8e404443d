#include "polartomo/forward.hpp"

#include <stdexcept>
#include <string>

namespace polartomo {

PolarizationFrames forward_frames(const DensityMatrix& rho, const GridSpec& grid) {
  require_same_grid(rho.grid, grid, "forward_frames");
  const auto n = static_cast<Eigen::Index>(grid.n_cells());
  if (rho.elements.rows() != n || rho.elements.cols() != n) {
    throw std::invalid_argument("forward_frames: density matrix shape does not match grid");
  }
  const double defect = (rho.elements - rho.elements.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-9) {
    throw std::invalid_argument("forward_frames: density matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }

  PolarizationFrames out{RealMatrix(n, n), RealMatrix(n, n), RealMatrix(n, n),
                         RealMatrix(n, n), grid, std::nullopt};
  const Eigen::VectorXd diag = rho.elements.diagonal().real();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index neg_y = n - 1 - j;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double common = diag[neg_y] + diag[i];
      const Complex cross = rho.elements(neg_y, i);
      out.gamma_d(i, j) = 0.25 * (common + 2.0 * cross.real());
      out.gamma_a(i, j) = 0.25 * (common - 2.0 * cross.real());
      out.gamma_r(i, j) = 0.25 * (common + 2.0 * cross.imag());
      out.gamma_l(i, j) = 0.25 * (common - 2.0 * cross.imag());
    }
  }
  return out;
}

RealMatrix to_mosaic(const PolarizationFrames& frames) {
  const Eigen::Index rows = frames.gamma_d.rows();
  const Eigen::Index cols = frames.gamma_d.cols();
  for (const RealMatrix* f : {&frames.gamma_a, &frames.gamma_r, &frames.gamma_l}) {
    if (f->rows() != rows || f->cols() != cols) {
      throw std::invalid_argument("to_mosaic: frames have different shapes");
    }
  }
  RealMatrix mosaic(2 * rows, 2 * cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      mosaic(2 * i, 2 * j) = frames.gamma_d(i, j);
      mosaic(2 * i, 2 * j + 1) = frames.gamma_r(i, j);
      mosaic(2 * i + 1, 2 * j) = frames.gamma_l(i, j);
      mosaic(2 * i + 1, 2 * j + 1) = frames.gamma_a(i, j);
    }
  }
  return mosaic;
}

PolarizationFrames from_mosaic(const RealMatrix& mosaic, const GridSpec& grid) {
  if (mosaic.rows() % 2 != 0 || mosaic.cols() % 2 != 0) {
    throw std::invalid_argument("from_mosaic: mosaic dimensions must be even");
  }
  const auto n = static_cast<Eigen::Index>(grid.n_cells());
  if (mosaic.rows() != 2 * n || mosaic.cols() != 2 * n) {
    throw std::invalid_argument("from_mosaic: mosaic size does not match grid");
  }
  PolarizationFrames out{RealMatrix(n, n), RealMatrix(n, n), RealMatrix(n, n),
                         RealMatrix(n, n), grid, std::nullopt};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out.gamma_d(i, j) = mosaic(2 * i, 2 * j);
      out.gamma_r(i, j) = mosaic(2 * i, 2 * j + 1);
      out.gamma_l(i, j) = mosaic(2 * i + 1, 2 * j);
      out.gamma_a(i, j) = mosaic(2 * i + 1, 2 * j + 1);
    }
  }
  return out;
}

double frame_sum_defect(const PolarizationFrames& frames) {
  return (frames.gamma_d + frames.gamma_a - frames.gamma_r - frames.gamma_l)
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace polartomo
