#include "polartomo/metrics.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "polartomo/reconstruct.hpp"

namespace polartomo {

namespace {

void require_same_shape(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.elements.rows() != b.elements.rows() || a.elements.cols() != b.elements.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
  if (a.elements.rows() != a.elements.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrices must be square");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_shape(a, b, "trace_distance");
  const ComplexMatrix diff = hermitize(a).elements - hermitize(b).elements;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(diff, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("trace_distance: eigensolver did not converge");
  }
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double trace_norm_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_shape(a, b, "trace_norm_distance");
  const ComplexMatrix diff = a.elements - b.elements;
  Eigen::BDCSVD<ComplexMatrix> svd(diff);
  return 0.5 * svd.singularValues().sum();
}

double purity(const DensityMatrix& rho) {
  const auto& m = rho.elements;
  if (m.rows() != m.cols()) throw std::invalid_argument("purity: matrix not square");
  // Tr(rho^2) = sum_ij rho_ij rho_ji
  return (m.array() * m.transpose().array()).sum().real();
}

Diagnostics diagnostics(const DensityMatrix& rho) {
  const auto& m = rho.elements;
  if (m.rows() != m.cols()) throw std::invalid_argument("diagnostics: matrix not square");
  Diagnostics d;
  d.hermiticity_defect = m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
  d.trace = m.trace();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(rho).elements,
                                                      Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

void MetricsReport::set(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of("=\n") != std::string::npos) {
    throw std::invalid_argument("metrics report: invalid key '" + key + "'");
  }
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void MetricsReport::set(const std::string& key, double value) {
  set(key, format_double(value));
}

void MetricsReport::set(const std::string& key, long long value) {
  set(key, std::to_string(value));
}

std::optional<std::string> MetricsReport::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::optional<double> MetricsReport::get_number(const std::string& key) const {
  const auto s = get(key);
  if (!s) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(*s, &used);
    if (used != s->size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string MetricsReport::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

MetricsReport MetricsReport::parse(const std::string& text) {
  MetricsReport r;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("metrics report: malformed line '" + line + "'");
    }
    r.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return r;
}

void add_diagnostics(MetricsReport& report, const std::string& prefix, const Diagnostics& d) {
  report.set(prefix + "hermiticity_defect", d.hermiticity_defect);
  report.set(prefix + "trace_re", d.trace.real());
  report.set(prefix + "trace_im", d.trace.imag());
  report.set(prefix + "min_eigenvalue", d.min_eigenvalue);
}

}  // namespace polartomo
