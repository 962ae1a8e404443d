#include "polartomo/reconstruct.hpp"

#include <stdexcept>
#include <string>

namespace polartomo {

DensityMatrix reconstruct_density(const PolarizationFrames& frames) {
  const auto n = static_cast<Eigen::Index>(frames.grid.n_cells());
  for (const RealMatrix* f :
       {&frames.gamma_d, &frames.gamma_a, &frames.gamma_r, &frames.gamma_l}) {
    if (f->rows() != n || f->cols() != n) {
      throw std::invalid_argument("reconstruct: frame shape does not match grid (" +
                                  std::to_string(f->rows()) + "x" +
                                  std::to_string(f->cols()) + ")");
    }
  }
  ComplexMatrix rho(n, n);
  for (Eigen::Index i2 = 0; i2 < n; ++i2) {
    for (Eigen::Index i1 = 0; i1 < n; ++i1) {
      const Eigen::Index y = n - 1 - i1;
      rho(i1, i2) = Complex(frames.gamma_d(i2, y) - frames.gamma_a(i2, y),
                            frames.gamma_r(i2, y) - frames.gamma_l(i2, y));
    }
  }
  return {std::move(rho), frames.grid};
}

DensityMatrix hermitize(const DensityMatrix& rho) {
  const Eigen::Index n = rho.elements.rows();
  if (rho.elements.cols() != n) throw std::invalid_argument("hermitize: matrix not square");
  ComplexMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const Complex v = 0.5 * (rho.elements(i, j) + std::conj(rho.elements(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return {std::move(out), rho.grid};
}

DensityMatrix renormalize_trace(const DensityMatrix& rho) {
  const double tr = rho.elements.trace().real();
  if (!(tr > 0.0)) {
    throw std::domain_error("renormalize_trace: real trace " + std::to_string(tr) +
                            " is not positive");
  }
  return {rho.elements / tr, rho.grid};
}

}  // namespace polartomo
