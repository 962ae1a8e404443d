#include "polartomo/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace polartomo {

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string matrix_csv(const DensityMatrix& rho) {
  std::string out = "i,j,re,im\n";
  const auto& m = rho.elements;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(j);
      out += ',';
      append_double(out, m(i, j).real());
      out += ',';
      append_double(out, m(i, j).imag());
      out += '\n';
    }
  }
  return out;
}

std::string mode_csv(const PureStateVector& mode) {
  std::string out = "x_mm,re,im\n";
  for (Eigen::Index j = 0; j < mode.amplitudes.size(); ++j) {
    append_double(out, mode.grid.position(static_cast<std::size_t>(j)));
    out += ',';
    append_double(out, mode.amplitudes[j].real());
    out += ',';
    append_double(out, mode.amplitudes[j].imag());
    out += '\n';
  }
  return out;
}

std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += ',';
    out += header[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("table_csv: ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      append_double(out, row[c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace polartomo
