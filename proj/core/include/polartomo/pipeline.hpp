#pragma once

#include <string>
#include <vector>

#include "polartomo/config.hpp"
#include "polartomo/decompose.hpp"
#include "polartomo/forward.hpp"
#include "polartomo/metrics.hpp"

namespace polartomo {

struct PipelineResult {
  MetricsReport report;
  DensityMatrix truth;
  std::vector<PureStateVector> generating_states;
  PolarizationFrames clean_frames;
  PolarizationFrames measured_frames;  ///< after noise and filtering
  DensityMatrix raw;                   ///< straight inversion
  DensityMatrix estimate;              ///< hermitized, optionally renormalized
  DecompositionResult decomposition;
};

/// generate -> forward -> [noise] -> [filter] -> reconstruct -> hermitize ->
/// [renormalize] -> decompose -> metrics. When config.outputs is non-empty
/// every intermediate is written there as an array file, with metrics.txt
/// and, if emit_csv, CSV dumps. Failures are rethrown as StageError tagged
/// with the stage name.
PipelineResult run_pipeline(const PipelineConfig& config, const std::string& command_line = {});

}  // namespace polartomo
