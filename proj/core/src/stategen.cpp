#include "polartomo/stategen.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "polartomo/reconstruct.hpp"

namespace polartomo {

namespace {

void normalize_in_place(ComplexVector& v, const char* what) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument(std::string(what) + ": state has zero or non-finite norm");
  }
  v /= norm;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void MixtureSpec::validate() const {
  if (components.empty()) throw std::invalid_argument("mixture: no components");
  double total = 0.0;
  for (std::size_t k = 0; k < components.size(); ++k) {
    const double p = components[k].probability;
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("mixture: probability of component " +
                                  std::to_string(k) + " must be positive");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture: probabilities sum to " + std::to_string(total) +
                                ", expected 1");
  }
}

double hermite_polynomial(int m, double u) {
  if (m < 0) throw std::invalid_argument("hermite_polynomial: negative order");
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = 2.0 * u;
  for (int k = 1; k < m; ++k) {
    const double next = 2.0 * u * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double phase_polynomial(const std::vector<PhaseTerm>& terms, double u) {
  double phase = 0.0;
  for (const auto& t : terms) phase += t.coefficient * std::pow(u, t.power);
  return phase;
}

PureStateVector eval_phase_poly_state(const std::vector<PhaseTerm>& terms,
                                      const GridSpec& grid) {
  for (const auto& t : terms) {
    if (t.power < 1) throw std::invalid_argument("phase_poly: powers must be >= 1");
  }
  const std::size_t n = grid.n_cells();
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexVector psi(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double phase = phase_polynomial(terms, grid.position(j) / grid.extent());
    psi[static_cast<Eigen::Index>(j)] = std::polar(amp, std::numbers::pi * phase);
  }
  return {std::move(psi), grid};
}

PureStateVector eval_hg_state(int order, double waist_ratio, const GridSpec& grid) {
  if (order < 0) throw std::invalid_argument("hermite_gauss: order must be >= 0");
  if (!(waist_ratio > 0.0) || !std::isfinite(waist_ratio)) {
    throw std::invalid_argument("hermite_gauss: waist_ratio must be positive");
  }
  const double w0 = waist_ratio * grid.extent();
  if (2.0 * w0 * std::sqrt(order + 1.0) > grid.extent()) {
    throw std::invalid_argument("hermite_gauss: order " + std::to_string(order) +
                                " is wider than the grid extent");
  }
  if (grid.pitch() > w0 / 4.0) {
    std::cerr << "warning: hermite_gauss order " << order << " under-resolved (pitch "
              << grid.pitch() << " mm > w0/4 = " << w0 / 4.0 << " mm)\n";
  }

  // Normalized Hermite functions phi_m(u) = H_m(u) exp(-u^2/2) / sqrt(2^m m!)
  // with u = sqrt(2) x / w0; the prefactor (2/pi w0^2)^(1/4) drops out on
  // renormalization.
  const std::size_t n = grid.n_cells();
  ComplexVector psi(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double u = std::numbers::sqrt2 * grid.position(j) / w0;
    double prev = std::exp(-0.5 * u * u);
    double cur = prev;
    if (order >= 1) {
      cur = std::numbers::sqrt2 * u * prev;
      for (int k = 1; k < order; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * u * cur -
                            std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
      }
    }
    psi[static_cast<Eigen::Index>(j)] = cur;
  }
  normalize_in_place(psi, "hermite_gauss");
  return {std::move(psi), grid};
}

PureStateVector eval_mode(const ModeDescriptor& mode, const GridSpec& grid) {
  return std::visit(
      Overloaded{
          [&](const PhasePolyMode& m) { return eval_phase_poly_state(m.terms, grid); },
          [&](const HermiteGaussMode& m) {
            return eval_hg_state(m.order, m.waist_ratio, grid);
          },
          [&](const RawMode& m) {
            if (m.amplitudes.size() != grid.n_cells()) {
              throw std::invalid_argument("raw mode: expected " +
                                          std::to_string(grid.n_cells()) +
                                          " amplitudes, got " +
                                          std::to_string(m.amplitudes.size()));
            }
            ComplexVector psi = Eigen::Map<const ComplexVector>(
                m.amplitudes.data(), static_cast<Eigen::Index>(m.amplitudes.size()));
            normalize_in_place(psi, "raw mode");
            return PureStateVector{std::move(psi), grid};
          },
      },
      mode);
}

std::vector<PureStateVector> eval_mixture_states(const MixtureSpec& mix,
                                                 const GridSpec& grid) {
  std::vector<PureStateVector> states;
  states.reserve(mix.components.size());
  for (const auto& c : mix.components) states.push_back(eval_mode(c.mode, grid));
  return states;
}

DensityMatrix assemble_density_matrix(const std::vector<double>& probabilities,
                                      const std::vector<PureStateVector>& states) {
  if (states.empty() || probabilities.size() != states.size()) {
    throw std::invalid_argument("assemble: need one probability per state");
  }
  const GridSpec& grid = states.front().grid;
  const auto n = static_cast<Eigen::Index>(grid.n_cells());
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < states.size(); ++k) {
    require_same_grid(grid, states[k].grid, "assemble");
    const auto& psi = states[k].amplitudes;
    rho.noalias() += probabilities[k] * (psi * psi.adjoint());
  }
  return hermitize(DensityMatrix{std::move(rho), grid});
}

DensityMatrix assemble_density_matrix(const MixtureSpec& mix, const GridSpec& grid) {
  mix.validate();
  std::vector<double> probs;
  probs.reserve(mix.components.size());
  for (const auto& c : mix.components) probs.push_back(c.probability);
  return assemble_density_matrix(probs, eval_mixture_states(mix, grid));
}

ComplexMatrix gram_matrix(const std::vector<PureStateVector>& states) {
  const auto k = static_cast<Eigen::Index>(states.size());
  ComplexMatrix g(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      g(a, b) = states[static_cast<std::size_t>(a)].amplitudes.dot(
          states[static_cast<std::size_t>(b)].amplitudes);
    }
  }
  return g;
}

MixtureSpec phase_only_benchmark_mixture() {
  return MixtureSpec{{
      {0.21, PhasePolyMode{{{1, 1.04}}}},
      {0.30, PhasePolyMode{{{3, -8.42}, {1, 4.04}}}},
      {0.49, PhasePolyMode{{{5, -17.6}, {1, -1.0}}}},
  }};
}

MixtureSpec hermite_gauss_benchmark_mixture() {
  return MixtureSpec{{
      {0.22, HermiteGaussMode{0, 0.15}},
      {0.33, HermiteGaussMode{1, 0.15}},
      {0.45, HermiteGaussMode{2, 0.15}},
  }};
}

}  // namespace polartomo
