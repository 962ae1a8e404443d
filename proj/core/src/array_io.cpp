#include "polartomo/array_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>

#include <json.hpp>

namespace polartomo {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(IoErrc code) noexcept {
  switch (code) {
    case IoErrc::open_failed: return "open_failed";
    case IoErrc::write_failed: return "write_failed";
    case IoErrc::length_mismatch: return "length_mismatch";
    case IoErrc::schema_violation: return "schema_violation";
    case IoErrc::unknown_kind: return "unknown_kind";
  }
  return "unknown";
}

const char* to_string(ArrayKind kind) noexcept {
  switch (kind) {
    case ArrayKind::density: return "density";
    case ArrayKind::frames: return "frames";
    case ArrayKind::mosaic: return "mosaic";
    case ArrayKind::mode: return "mode";
  }
  return "unknown";
}

namespace {

constexpr const char* kFormat = "polartomo-array";
constexpr int kVersion = 1;

ArrayKind parse_kind(const std::string& s) {
  if (s == "density") return ArrayKind::density;
  if (s == "frames") return ArrayKind::frames;
  if (s == "mosaic") return ArrayKind::mosaic;
  if (s == "mode") return ArrayKind::mode;
  throw ArrayIoError(IoErrc::unknown_kind, "unknown array kind '" + s + "'");
}

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xFFu) << (8 * (7 - b));
    return r;
  }
}

std::vector<std::size_t> expected_shape(ArrayKind kind, std::size_t n) {
  switch (kind) {
    case ArrayKind::density: return {n, n};
    case ArrayKind::frames: return {4, n, n};
    case ArrayKind::mosaic: return {2 * n, 2 * n};
    case ArrayKind::mode: return {n};
  }
  return {};
}

bool expected_complex(ArrayKind kind) {
  return kind == ArrayKind::density || kind == ArrayKind::mode;
}

std::size_t element_count(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

void check_consistent(const ArrayMetadata& meta) {
  if (meta.shape != expected_shape(meta.kind, meta.grid.n_cells())) {
    throw ArrayIoError(IoErrc::schema_violation,
                       std::string("shape does not match grid for kind ") +
                           to_string(meta.kind));
  }
  if (meta.is_complex != expected_complex(meta.kind)) {
    throw ArrayIoError(IoErrc::schema_violation,
                       std::string("complex flag inconsistent with kind ") +
                           to_string(meta.kind));
  }
}

fs::path temp_path(const fs::path& target) {
  fs::path tmp = target;
  tmp += ".tmp";
  return tmp;
}

void atomic_write(const fs::path& target, const char* data, std::size_t size) {
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = temp_path(target);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ArrayIoError(IoErrc::open_failed, "cannot open " + tmp.string());
    out.write(data, static_cast<std::streamsize>(size));
    out.flush();
    if (!out) throw ArrayIoError(IoErrc::write_failed, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ArrayIoError(IoErrc::write_failed, "cannot rename into " + target.string());
  }
}

json sidecar_json(const ArrayMetadata& meta) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = to_string(meta.kind);
  j["shape"] = meta.shape;
  j["dtype"] = "float64";
  j["byte_order"] = "little";
  j["complex"] = meta.is_complex;
  j["grid"] = {{"n_cells", meta.grid.n_cells()}, {"extent_mm", meta.grid.extent()}};
  json prov = {{"command", meta.provenance.command}};
  if (meta.provenance.seed) prov["seed"] = *meta.provenance.seed;
  j["provenance"] = prov;
  if (meta.photon_budget) j["photon_budget"] = *meta.photon_budget;
  return j;
}

ArrayMetadata parse_sidecar(const json& j) {
  try {
    if (!j.is_object()) throw ArrayIoError(IoErrc::schema_violation, "sidecar is not an object");
    if (j.at("format").get<std::string>() != kFormat) {
      throw ArrayIoError(IoErrc::schema_violation, "unrecognized format tag");
    }
    if (j.at("version").get<int>() != kVersion) {
      throw ArrayIoError(IoErrc::schema_violation, "unsupported version");
    }
    if (j.at("dtype").get<std::string>() != "float64" ||
        j.at("byte_order").get<std::string>() != "little") {
      throw ArrayIoError(IoErrc::schema_violation, "payload must be little-endian float64");
    }
    ArrayMetadata meta;
    meta.kind = parse_kind(j.at("kind").get<std::string>());
    meta.shape = j.at("shape").get<std::vector<std::size_t>>();
    meta.is_complex = j.at("complex").get<bool>();
    const auto& g = j.at("grid");
    meta.grid = GridSpec(g.at("n_cells").get<std::size_t>(), g.at("extent_mm").get<double>());
    if (j.contains("provenance")) {
      const auto& p = j.at("provenance");
      meta.provenance.command = p.value("command", std::string{});
      if (p.contains("seed")) meta.provenance.seed = p.at("seed").get<std::uint64_t>();
    }
    if (j.contains("photon_budget")) meta.photon_budget = j.at("photon_budget").get<double>();
    check_consistent(meta);
    return meta;
  } catch (const ArrayIoError&) {
    throw;
  } catch (const std::exception& e) {
    throw ArrayIoError(IoErrc::schema_violation, e.what());
  }
}

}  // namespace

fs::path sidecar_path(const fs::path& payload) {
  fs::path p = payload;
  p.replace_extension(".json");
  return p;
}

void write_array(const ArrayFile& array, const fs::path& payload) {
  check_consistent(array.meta);
  const std::size_t expected =
      element_count(array.meta.shape) * (array.meta.is_complex ? 2 : 1);
  if (array.values.size() != expected) {
    throw ArrayIoError(IoErrc::length_mismatch, "payload has " +
                                                    std::to_string(array.values.size()) +
                                                    " values, shape needs " +
                                                    std::to_string(expected));
  }
  if (payload.extension() == ".json") {
    throw ArrayIoError(IoErrc::schema_violation, "payload path must not end in .json");
  }

  std::vector<std::uint64_t> words(array.values.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    words[k] = to_little_endian(std::bit_cast<std::uint64_t>(array.values[k]));
  }
  atomic_write(payload, reinterpret_cast<const char*>(words.data()), words.size() * 8);
  const std::string side = sidecar_json(array.meta).dump(2) + "\n";
  atomic_write(sidecar_path(payload), side.data(), side.size());
}

ArrayFile read_array(const fs::path& payload) {
  const fs::path side = sidecar_path(payload);
  std::ifstream sin(side);
  if (!sin) throw ArrayIoError(IoErrc::open_failed, "cannot open " + side.string());
  json j;
  try {
    sin >> j;
  } catch (const std::exception& e) {
    throw ArrayIoError(IoErrc::schema_violation, std::string("sidecar: ") + e.what());
  }
  ArrayFile out;
  out.meta = parse_sidecar(j);

  std::ifstream pin(payload, std::ios::binary);
  if (!pin) throw ArrayIoError(IoErrc::open_failed, "cannot open " + payload.string());
  const std::string bytes((std::istreambuf_iterator<char>(pin)), std::istreambuf_iterator<char>());
  const std::size_t expected =
      element_count(out.meta.shape) * (out.meta.is_complex ? 2 : 1);
  if (bytes.size() != expected * 8) {
    throw ArrayIoError(IoErrc::length_mismatch,
                       payload.string() + " has " + std::to_string(bytes.size()) +
                           " bytes, expected " + std::to_string(expected * 8));
  }
  out.values.resize(expected);
  for (std::size_t k = 0; k < expected; ++k) {
    std::uint64_t w = 0;
    std::memcpy(&w, bytes.data() + 8 * k, 8);
    out.values[k] = std::bit_cast<double>(to_little_endian(w));
  }
  return out;
}

void write_density(const DensityMatrix& rho, const fs::path& payload,
                   const Provenance& provenance) {
  const std::size_t n = rho.grid.n_cells();
  if (static_cast<std::size_t>(rho.elements.rows()) != n ||
      static_cast<std::size_t>(rho.elements.cols()) != n) {
    throw ArrayIoError(IoErrc::schema_violation, "density matrix shape does not match grid");
  }
  ArrayFile a{{ArrayKind::density, {n, n}, true, rho.grid, provenance, std::nullopt}, {}};
  a.values.reserve(2 * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = rho.elements(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      a.values.push_back(v.real());
      a.values.push_back(v.imag());
    }
  }
  write_array(a, payload);
}

DensityMatrix read_density(const fs::path& payload) {
  ArrayFile a = read_array(payload);
  if (a.meta.kind != ArrayKind::density) {
    throw ArrayIoError(IoErrc::schema_violation,
                       std::string("expected density, found ") + to_string(a.meta.kind));
  }
  const auto n = static_cast<Eigen::Index>(a.meta.grid.n_cells());
  ComplexMatrix m(n, n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j, k += 2) m(i, j) = Complex(a.values[k], a.values[k + 1]);
  }
  return {std::move(m), a.meta.grid};
}

void write_frames(const PolarizationFrames& frames, const fs::path& payload,
                  const Provenance& provenance) {
  const std::size_t n = frames.grid.n_cells();
  ArrayFile a{{ArrayKind::frames, {4, n, n}, false, frames.grid, provenance,
               frames.photon_budget},
              {}};
  a.values.reserve(4 * n * n);
  for (const RealMatrix* plane :
       {&frames.gamma_d, &frames.gamma_a, &frames.gamma_r, &frames.gamma_l}) {
    if (static_cast<std::size_t>(plane->rows()) != n ||
        static_cast<std::size_t>(plane->cols()) != n) {
      throw ArrayIoError(IoErrc::schema_violation, "frame shape does not match grid");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a.values.push_back((*plane)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
    }
  }
  write_array(a, payload);
}

void write_mosaic(const PolarizationFrames& frames, const fs::path& payload,
                  const Provenance& provenance) {
  const std::size_t n = frames.grid.n_cells();
  const RealMatrix mosaic = to_mosaic(frames);
  if (static_cast<std::size_t>(mosaic.rows()) != 2 * n) {
    throw ArrayIoError(IoErrc::schema_violation, "frame shape does not match grid");
  }
  ArrayFile a{{ArrayKind::mosaic, {2 * n, 2 * n}, false, frames.grid, provenance,
               frames.photon_budget},
              {}};
  a.values.reserve(4 * n * n);
  for (Eigen::Index i = 0; i < mosaic.rows(); ++i) {
    for (Eigen::Index j = 0; j < mosaic.cols(); ++j) a.values.push_back(mosaic(i, j));
  }
  write_array(a, payload);
}

PolarizationFrames read_frames(const fs::path& payload) {
  ArrayFile a = read_array(payload);
  const auto n = static_cast<Eigen::Index>(a.meta.grid.n_cells());
  if (a.meta.kind == ArrayKind::mosaic) {
    RealMatrix mosaic(2 * n, 2 * n);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
      for (Eigen::Index j = 0; j < 2 * n; ++j) mosaic(i, j) = a.values[k++];
    }
    PolarizationFrames f = from_mosaic(mosaic, a.meta.grid);
    f.photon_budget = a.meta.photon_budget;
    return f;
  }
  if (a.meta.kind != ArrayKind::frames) {
    throw ArrayIoError(IoErrc::schema_violation,
                       std::string("expected frames, found ") + to_string(a.meta.kind));
  }
  PolarizationFrames f{RealMatrix(n, n), RealMatrix(n, n), RealMatrix(n, n),
                       RealMatrix(n, n), a.meta.grid, a.meta.photon_budget};
  std::size_t k = 0;
  for (RealMatrix* plane : {&f.gamma_d, &f.gamma_a, &f.gamma_r, &f.gamma_l}) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) (*plane)(i, j) = a.values[k++];
    }
  }
  return f;
}

void write_mode(const PureStateVector& mode, const fs::path& payload,
                const Provenance& provenance) {
  const std::size_t n = mode.grid.n_cells();
  if (static_cast<std::size_t>(mode.amplitudes.size()) != n) {
    throw ArrayIoError(IoErrc::schema_violation, "mode length does not match grid");
  }
  ArrayFile a{{ArrayKind::mode, {n}, true, mode.grid, provenance, std::nullopt}, {}};
  a.values.reserve(2 * n);
  for (Eigen::Index j = 0; j < mode.amplitudes.size(); ++j) {
    a.values.push_back(mode.amplitudes[j].real());
    a.values.push_back(mode.amplitudes[j].imag());
  }
  write_array(a, payload);
}

PureStateVector read_mode(const fs::path& payload) {
  ArrayFile a = read_array(payload);
  if (a.meta.kind != ArrayKind::mode) {
    throw ArrayIoError(IoErrc::schema_violation,
                       std::string("expected mode, found ") + to_string(a.meta.kind));
  }
  const auto n = static_cast<Eigen::Index>(a.meta.grid.n_cells());
  ComplexVector v(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    v[j] = Complex(a.values[2 * static_cast<std::size_t>(j)],
                   a.values[2 * static_cast<std::size_t>(j) + 1]);
  }
  return {std::move(v), a.meta.grid};
}

void write_text_file(const fs::path& path, const std::string& contents) {
  atomic_write(path, contents.data(), contents.size());
}

}  // namespace polartomo
