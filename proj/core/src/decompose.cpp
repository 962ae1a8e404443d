#include "polartomo/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace polartomo {

DecompositionResult decompose_density(const DensityMatrix& rho, std::size_t k_max) {
  const auto n = static_cast<std::size_t>(rho.elements.rows());
  if (rho.elements.cols() != rho.elements.rows() || n != rho.grid.n_cells()) {
    throw std::invalid_argument("decompose: matrix shape does not match grid");
  }
  if (k_max < 1 || k_max > n) {
    throw std::invalid_argument("decompose: k_max must be in [1, " + std::to_string(n) +
                                "], got " + std::to_string(k_max));
  }
  const double defect = (rho.elements - rho.elements.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-9) {
    throw std::invalid_argument("decompose: input is not Hermitian (defect " +
                                std::to_string(defect) + "); hermitize first");
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.elements);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("decompose: eigensolver did not converge");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const ComplexMatrix& evecs = solver.eigenvectors();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(evals[a]) > std::abs(evals[b]);
  });

  DecompositionResult result;
  ComplexMatrix remainder = rho.elements;
  for (std::size_t k = 0; k < k_max; ++k) {
    const Eigen::Index idx = order[k];
    const double w = evals[idx];
    PureStateVector mode = fix_gauge({evecs.col(idx), rho.grid});
    remainder.noalias() -= w * (mode.amplitudes * mode.amplitudes.adjoint());
    result.weights.push_back(w);
    result.singular_values.push_back(std::abs(w));
    result.modes.push_back(std::move(mode));
  }
  result.residual = remainder.norm();
  return result;
}

PureStateVector fix_gauge(const PureStateVector& psi) {
  const auto& v = psi.amplitudes;
  if (v.size() == 0) throw std::invalid_argument("fix_gauge: empty vector");
  Eigen::Index peak = 0;
  double peak_abs = std::abs(v[0]);
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > peak_abs) {
      peak_abs = a;
      peak = i;
    }
  }
  if (!(peak_abs > 0.0)) throw std::invalid_argument("fix_gauge: zero vector");
  const Complex phase = std::conj(v[peak]) / peak_abs;
  PureStateVector out{v * phase, psi.grid};
  out.amplitudes[peak] = Complex(peak_abs, 0.0);
  return out;
}

double mode_fidelity(const PureStateVector& a, const PureStateVector& b) {
  require_same_grid(a.grid, b.grid, "mode_fidelity");
  if (a.amplitudes.size() != b.amplitudes.size()) {
    throw std::invalid_argument("mode_fidelity: length mismatch");
  }
  const double f = std::norm(a.amplitudes.dot(b.amplitudes));
  return std::clamp(f, 0.0, 1.0);
}

std::vector<ModeMatch> match_modes(const std::vector<PureStateVector>& theory,
                                   const std::vector<PureStateVector>& recovered) {
  std::vector<bool> taken(recovered.size(), false);
  std::vector<ModeMatch> matches;
  for (std::size_t t = 0; t < theory.size(); ++t) {
    std::size_t best = recovered.size();
    double best_fid = -1.0;
    for (std::size_t r = 0; r < recovered.size(); ++r) {
      if (taken[r]) continue;
      const double f = mode_fidelity(theory[t], recovered[r]);
      if (f > best_fid) {
        best_fid = f;
        best = r;
      }
    }
    if (best == recovered.size()) break;
    taken[best] = true;
    matches.push_back({t, best, best_fid});
  }
  return matches;
}

double subspace_overlap(const std::vector<PureStateVector>& a,
                        const std::vector<PureStateVector>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("subspace_overlap: empty set");
  // Tr(P_a P_b) = sum_ij |<a_i|b_j>|^2
  double acc = 0.0;
  for (const auto& u : a) {
    for (const auto& v : b) {
      require_same_grid(u.grid, v.grid, "subspace_overlap");
      acc += std::norm(u.amplitudes.dot(v.amplitudes));
    }
  }
  return acc / static_cast<double>(std::max(a.size(), b.size()));
}

}  // namespace polartomo
