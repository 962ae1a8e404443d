#include "polartomo/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>

#include "polartomo/array_io.hpp"
#include "polartomo/csv.hpp"
#include "polartomo/error.hpp"
#include "polartomo/filter.hpp"
#include "polartomo/noise.hpp"
#include "polartomo/reconstruct.hpp"
#include "polartomo/stategen.hpp"

namespace polartomo {

namespace fs = std::filesystem;

namespace {

template <class F>
auto run_stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, const std::string& command_line) {
  run_stage("config", [&] {
    config.validate();
    return 0;
  });
  const GridSpec& grid = config.grid;
  const std::size_t n_components = config.mixture.components.size();

  auto states = run_stage("generate", [&] { return eval_mixture_states(config.mixture, grid); });
  std::vector<double> probs;
  for (const auto& c : config.mixture.components) probs.push_back(c.probability);
  DensityMatrix truth =
      run_stage("generate", [&] { return assemble_density_matrix(probs, states); });

  PolarizationFrames clean = run_stage("forward", [&] { return forward_frames(truth, grid); });
  PolarizationFrames measured =
      run_stage("noise", [&] { return apply_noise(clean, config.noise); });
  PolarizationFrames filtered =
      run_stage("filter", [&] { return gaussian_filter(measured, config.filter_sigma_px); });

  DensityMatrix raw = run_stage("reconstruct", [&] { return reconstruct_density(filtered); });
  DensityMatrix herm = run_stage("hermitize", [&] { return hermitize(raw); });
  DensityMatrix estimate = config.renormalize
                               ? run_stage("renormalize", [&] { return renormalize_trace(herm); })
                               : herm;

  const std::size_t k_max = config.effective_k_max();
  DecompositionResult dec =
      run_stage("decompose", [&] { return decompose_density(estimate, k_max); });
  DecompositionResult truth_dec =
      run_stage("decompose", [&] { return decompose_density(truth, k_max); });

  // Generating states matched greedily in descending probability.
  std::vector<std::size_t> order(n_components);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
  const auto matches = run_stage("metrics", [&] {
    std::vector<PureStateVector> theory;
    for (std::size_t k : order) theory.push_back(states[k]);
    return match_modes(theory, dec.modes);
  });
  std::vector<double> generating_fidelity(dec.modes.size(), 0.0);
  for (const auto& m : matches) generating_fidelity[m.recovered_index] = m.fidelity;

  MetricsReport report = run_stage("metrics", [&] {
    MetricsReport r;
    r.set("n_cells", static_cast<long long>(grid.n_cells()));
    r.set("extent_mm", grid.extent());
    r.set("pitch_mm", grid.pitch());
    r.set("noise_kind", std::string(to_string(config.noise.kind)));
    if (config.noise.kind != NoiseKind::none) {
      r.set("photon_budget", config.noise.photon_budget);
      r.set("seed", std::to_string(config.noise.seed));
    }
    r.set("filter_sigma_px", config.filter_sigma_px);
    r.set("renormalize", std::string(config.renormalize ? "true" : "false"));
    r.set("frame_sum_defect", frame_sum_defect(clean));

    r.set("trace_distance", trace_distance(truth, estimate));
    r.set("trace_distance_hermitized", trace_distance(truth, herm));
    if (herm.elements.trace().real() > 0.0) {
      r.set("trace_distance_renormalized", trace_distance(truth, renormalize_trace(herm)));
    }
    r.set("trace_distance_raw", trace_norm_distance(truth, raw));
    r.set("purity", purity(estimate));
    r.set("purity_true", purity(truth));
    add_diagnostics(r, "raw_", diagnostics(raw));
    add_diagnostics(r, "", diagnostics(estimate));

    const ComplexMatrix gram = gram_matrix(states);
    double max_overlap = 0.0;
    for (Eigen::Index a = 0; a < gram.rows(); ++a) {
      for (Eigen::Index b = 0; b < gram.cols(); ++b) {
        if (a != b) max_overlap = std::max(max_overlap, std::abs(gram(a, b)));
      }
    }
    r.set("generating_max_overlap", max_overlap);

    r.set("k_max", static_cast<long long>(k_max));
    r.set("decomposition_residual", dec.residual);
    for (std::size_t k = 0; k < dec.weights.size(); ++k) {
      r.set("weight_" + std::to_string(k), dec.weights[k]);
    }
    for (const auto& m : matches) {
      const std::size_t comp = order[m.theory_index];
      r.set("fidelity_generating_" + std::to_string(comp), m.fidelity);
      r.set("matched_mode_" + std::to_string(comp), static_cast<long long>(m.recovered_index));
    }
    for (std::size_t k = 0; k < dec.modes.size(); ++k) {
      r.set("fidelity_coherent_" + std::to_string(k),
            mode_fidelity(truth_dec.modes[k], dec.modes[k]));
    }
    return r;
  });

  if (!config.outputs.empty()) {
    run_stage("write", [&] {
      const fs::path out = config.outputs;
      fs::create_directories(out);
      Provenance prov{command_line, config.noise.kind != NoiseKind::none
                                        ? std::optional<std::uint64_t>(config.noise.seed)
                                        : std::nullopt};
      write_density(truth, out / "rho_true.bin", prov);
      if (config.mosaic) {
        write_mosaic(clean, out / "frames_clean.bin", prov);
        write_mosaic(measured, out / "frames_measured.bin", prov);
        write_mosaic(filtered, out / "frames_filtered.bin", prov);
      } else {
        write_frames(clean, out / "frames_clean.bin", prov);
        write_frames(measured, out / "frames_measured.bin", prov);
        write_frames(filtered, out / "frames_filtered.bin", prov);
      }
      write_density(raw, out / "rho_raw.bin", prov);
      write_density(herm, out / "rho_hermitized.bin", prov);
      write_density(estimate, out / "rho_estimate.bin", prov);
      for (std::size_t k = 0; k < dec.modes.size(); ++k) {
        write_mode(dec.modes[k], out / ("mode_" + std::to_string(k) + ".bin"), prov);
      }
      for (std::size_t k = 0; k < states.size(); ++k) {
        write_mode(fix_gauge(states[k]), out / ("true_mode_" + std::to_string(k) + ".bin"),
                   prov);
      }
      write_text_file(out / "metrics.txt", report.to_text());
      if (config.emit_csv) {
        write_text_file(out / "rho_true.csv", matrix_csv(truth));
        write_text_file(out / "rho_estimate.csv", matrix_csv(estimate));
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < dec.modes.size(); ++k) {
          write_text_file(out / ("mode_" + std::to_string(k) + ".csv"), mode_csv(dec.modes[k]));
          rows.push_back({static_cast<double>(k), dec.weights[k], generating_fidelity[k],
                          mode_fidelity(truth_dec.modes[k], dec.modes[k])});
        }
        write_text_file(out / "modes_summary.csv",
                        table_csv({"k", "weight", "fidelity_generating", "fidelity_coherent"}, rows));
      }
      return 0;
    });
  }

  return PipelineResult{std::move(report), std::move(truth),    std::move(states),
                        std::move(clean),  std::move(filtered), std::move(raw),
                        std::move(estimate), std::move(dec)};
}

}  // namespace polartomo
