#pragma once

#include <cstddef>
#include <vector>

namespace polartomo {

/// Uniform, cell-centered 1D position basis of `n_cells` cells spanning
/// (-extent/2, extent/2]. Lengths are in millimeters.
///
/// Index j (0-based) sits at x_j = (2j + 1 - N) * extent / (2N). The integer
/// prefactor is negated exactly under j -> N-1-j, so position(flip_index(j))
/// == -position(j) holds bit-for-bit.
class GridSpec {
 public:
  /// Throws std::invalid_argument when n_cells < 2 or extent_mm is not a
  /// positive finite number.
  GridSpec(std::size_t n_cells, double extent_mm);

  std::size_t n_cells() const noexcept { return n_cells_; }
  double extent() const noexcept { return extent_; }
  double pitch() const noexcept { return extent_ / static_cast<double>(n_cells_); }

  double position(std::size_t j) const;
  std::size_t flip_index(std::size_t j) const;
  std::vector<double> positions() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::size_t n_cells_;
  double extent_;
};

GridSpec make_grid(std::size_t n_cells, double extent_mm);

/// Throws std::invalid_argument naming `what` when the grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace polartomo
