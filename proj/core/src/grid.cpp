#include "polartomo/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace polartomo {

GridSpec::GridSpec(std::size_t n_cells, double extent_mm)
    : n_cells_(n_cells), extent_(extent_mm) {
  if (n_cells < 2) {
    throw std::invalid_argument("grid: n_cells must be >= 2, got " +
                                std::to_string(n_cells));
  }
  if (!(extent_mm > 0.0) || !std::isfinite(extent_mm)) {
    throw std::invalid_argument("grid: extent must be positive and finite");
  }
}

double GridSpec::position(std::size_t j) const {
  if (j >= n_cells_) throw std::out_of_range("grid: position index out of range");
  const double n = static_cast<double>(n_cells_);
  const double offset = 2.0 * static_cast<double>(j) + 1.0 - n;
  return offset * (extent_ / (2.0 * n));
}

std::size_t GridSpec::flip_index(std::size_t j) const {
  if (j >= n_cells_) throw std::out_of_range("grid: flip index out of range");
  return n_cells_ - 1 - j;
}

std::vector<double> GridSpec::positions() const {
  std::vector<double> xs(n_cells_);
  for (std::size_t j = 0; j < n_cells_; ++j) xs[j] = position(j);
  return xs;
}

GridSpec make_grid(std::size_t n_cells, double extent_mm) {
  return GridSpec(n_cells, extent_mm);
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": grid mismatch (" +
                                std::to_string(a.n_cells()) + " vs " +
                                std::to_string(b.n_cells()) + " cells)");
  }
}

}  // namespace polartomo
