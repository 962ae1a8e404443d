#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polartomo/types.hpp"

namespace polartomo {

/// 1/2 sum |lambda_i| over eigenvalues of hermitize(a) - hermitize(b).
/// Throws std::invalid_argument on a shape mismatch.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// 1/2 Tr sqrt((a-b)(a-b)^dagger), i.e. half the nuclear norm, without
/// hermitizing. Used for raw (pre-hermitization) reconstructions.
double trace_norm_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Re Tr(rho^2).
double purity(const DensityMatrix& rho);

struct Diagnostics {
  double hermiticity_defect = 0.0;  ///< max |rho - rho^dagger|
  Complex trace;
  double min_eigenvalue = 0.0;  ///< of hermitize(rho)
};

Diagnostics diagnostics(const DensityMatrix& rho);

/// Flat, ordered key/value report. Rendered one `key=value` per line.
class MetricsReport {
 public:
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, const std::string& value);

  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_number(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }

  std::string to_text() const;
  static MetricsReport parse(const std::string& text);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Adds hermiticity_defect, trace_re, trace_im, min_eigenvalue under
/// `prefix`.
void add_diagnostics(MetricsReport& report, const std::string& prefix, const Diagnostics& d);

}  // namespace polartomo
