#pragma once

#include <string>
#include <vector>

#include "polartomo/types.hpp"

namespace polartomo {

/// "i,j,re,im" rows for every element.
std::string matrix_csv(const DensityMatrix& rho);

/// "x_mm,re,im" rows along the grid.
std::string mode_csv(const PureStateVector& mode);

/// Header plus rows; values written with full double precision.
std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

}  // namespace polartomo
