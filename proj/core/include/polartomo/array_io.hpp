#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "polartomo/error.hpp"
#include "polartomo/forward.hpp"
#include "polartomo/types.hpp"

namespace polartomo {

// On-disk array format: a raw payload file of little-endian float64 values
// in row-major order (complex values interleaved re, im), plus a JSON
// sidecar next to it with the same stem and a ".json" extension:
//
//   {"format": "polartomo-array", "version": 1, "kind": "density",
//    "shape": [N, N], "dtype": "float64", "byte_order": "little",
//    "complex": true, "grid": {"n_cells": N, "extent_mm": a},
//    "provenance": {"command": "...", "seed": 7}}
//
// kind    shape       complex
// density [N, N]      yes
// frames  [4, N, N]   no     planes ordered D, A, R, L; index [plane][x][y]
// mosaic  [2N, 2N]    no     2x2 superpixels [D R; L A]
// mode    [N]         yes

enum class ArrayKind { density, frames, mosaic, mode };

const char* to_string(ArrayKind kind) noexcept;

struct Provenance {
  std::string command;
  std::optional<std::uint64_t> seed;
};

struct ArrayMetadata {
  ArrayKind kind = ArrayKind::density;
  std::vector<std::size_t> shape;
  bool is_complex = false;
  GridSpec grid{2, 1.0};
  Provenance provenance;
  /// Frames only.
  std::optional<double> photon_budget;
};

struct ArrayFile {
  ArrayMetadata meta;
  /// Flat payload; interleaved (re, im) when meta.is_complex.
  std::vector<double> values;
};

std::filesystem::path sidecar_path(const std::filesystem::path& payload);

/// Writes payload then sidecar, each through a temporary file and rename.
/// Throws ArrayIoError.
void write_array(const ArrayFile& array, const std::filesystem::path& payload);

/// Throws ArrayIoError with a code for each failure class; never returns a
/// partial result.
ArrayFile read_array(const std::filesystem::path& payload);

void write_density(const DensityMatrix& rho, const std::filesystem::path& payload,
                   const Provenance& provenance = {});
DensityMatrix read_density(const std::filesystem::path& payload);

void write_frames(const PolarizationFrames& frames, const std::filesystem::path& payload,
                  const Provenance& provenance = {});
void write_mosaic(const PolarizationFrames& frames, const std::filesystem::path& payload,
                  const Provenance& provenance = {});
/// Accepts both the "frames" and "mosaic" kinds.
PolarizationFrames read_frames(const std::filesystem::path& payload);

void write_mode(const PureStateVector& mode, const std::filesystem::path& payload,
                const Provenance& provenance = {});
PureStateVector read_mode(const std::filesystem::path& payload);

/// Writes `contents` to `path` atomically (temporary file + rename).
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace polartomo
