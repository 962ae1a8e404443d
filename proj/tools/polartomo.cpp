// polartomo: command-line front end for the direct density-matrix
// tomography simulator.
//
//   polartomo pipeline --config cfg.json [--seed S] [--out DIR] [--budget B]
//                      [--filter-sigma PX] [--no-renormalize] [--emit-csv] [--mosaic]
//   polartomo generate --config cfg.json --out DIR
//   polartomo forward --in rho.bin --out DIR [--budget B --seed S] [--mosaic]
//   polartomo reconstruct --in frames.bin --out DIR [--filter-sigma PX]
//   polartomo decompose --in rho.bin --k K --out DIR [--config cfg.json]
//   polartomo metrics --a rho1.bin --b rho2.bin
//   polartomo scan-baseline (--config cfg.json | --in rho.bin | --n N) ...
//
// Flags override the corresponding config values. Reports go to stdout as
// key=value lines; artifacts go to --out.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "polartomo/array_io.hpp"
#include "polartomo/config.hpp"
#include "polartomo/csv.hpp"
#include "polartomo/decompose.hpp"
#include "polartomo/error.hpp"
#include "polartomo/filter.hpp"
#include "polartomo/metrics.hpp"
#include "polartomo/noise.hpp"
#include "polartomo/pipeline.hpp"
#include "polartomo/reconstruct.hpp"
#include "polartomo/scan_baseline.hpp"
#include "polartomo/stategen.hpp"

namespace fs = std::filesystem;
using namespace polartomo;

namespace {

std::string joined_command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

NoiseModel noise_from_flags(const std::optional<double>& budget, const std::string& kind,
                            double readout_sigma, const std::optional<std::uint64_t>& seed) {
  NoiseModel noise;
  noise.kind = parse_noise_kind(kind);
  if (budget && noise.kind == NoiseKind::none) noise.kind = NoiseKind::poisson;
  if (noise.kind != NoiseKind::none) {
    if (!budget) throw StageError("config", "--budget is required when noise is enabled");
    if (!seed) throw StageError("config", "--seed is required when noise is enabled");
    noise.photon_budget = *budget;
    noise.readout_sigma = readout_sigma;
    noise.seed = *seed;
  }
  noise.validate();
  return noise;
}

struct Options {
  std::string config;
  std::string in;
  std::string in_b;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> budget;
  std::optional<double> filter_sigma;
  std::string noise_kind = "none";
  double readout_sigma = 0.0;
  bool no_renormalize = false;
  bool emit_csv = false;
  bool mosaic = false;
  std::size_t k = 0;
  std::size_t n = 0;
  int phase_steps = 2;
};

int cmd_pipeline(const Options& o, const std::string& cmdline) {
  PipelineConfig cfg = load_config(o.config);
  ConfigOverrides ov;
  ov.seed = o.seed;
  if (!o.out.empty()) ov.out = o.out;
  ov.no_renormalize = o.no_renormalize;
  ov.filter_sigma_px = o.filter_sigma;
  ov.budget = o.budget;
  ov.emit_csv = o.emit_csv;
  ov.mosaic = o.mosaic;
  apply_overrides(cfg, ov);
  const PipelineResult result = run_pipeline(cfg, cmdline);
  std::cout << result.report.to_text();
  return 0;
}

int cmd_generate(const Options& o, const std::string& cmdline) {
  PipelineConfig cfg = load_config(o.config);
  const auto states = eval_mixture_states(cfg.mixture, cfg.grid);
  std::vector<double> probs;
  for (const auto& c : cfg.mixture.components) probs.push_back(c.probability);
  const DensityMatrix rho = assemble_density_matrix(probs, states);

  MetricsReport r;
  r.set("n_cells", static_cast<long long>(cfg.grid.n_cells()));
  r.set("components", static_cast<long long>(states.size()));
  r.set("purity", purity(rho));
  add_diagnostics(r, "", diagnostics(rho));
  const ComplexMatrix gram = gram_matrix(states);
  for (Eigen::Index a = 0; a < gram.rows(); ++a) {
    for (Eigen::Index b = a + 1; b < gram.cols(); ++b) {
      r.set("overlap_" + std::to_string(a) + "_" + std::to_string(b), std::abs(gram(a, b)));
    }
  }
  if (!o.out.empty()) {
    const fs::path out = o.out;
    const Provenance prov{cmdline, std::nullopt};
    write_density(rho, out / "rho_true.bin", prov);
    for (std::size_t k = 0; k < states.size(); ++k) {
      write_mode(states[k], out / ("true_mode_" + std::to_string(k) + ".bin"), prov);
      if (o.emit_csv) {
        write_text_file(out / ("true_mode_" + std::to_string(k) + ".csv"), mode_csv(states[k]));
      }
    }
    if (o.emit_csv) write_text_file(out / "rho_true.csv", matrix_csv(rho));
  }
  std::cout << r.to_text();
  return 0;
}

int cmd_forward(const Options& o, const std::string& cmdline) {
  const DensityMatrix rho = read_density(o.in);
  const NoiseModel noise = noise_from_flags(o.budget, o.noise_kind, o.readout_sigma, o.seed);
  const PolarizationFrames clean = forward_frames(rho, rho.grid);
  const PolarizationFrames frames = apply_noise(clean, noise);

  MetricsReport r;
  r.set("n_cells", static_cast<long long>(rho.grid.n_cells()));
  r.set("noise_kind", std::string(to_string(noise.kind)));
  r.set("frame_sum_defect", frame_sum_defect(clean));
  r.set("frame_sum_defect_measured", frame_sum_defect(frames));
  if (!o.out.empty()) {
    const fs::path out = o.out;
    const Provenance prov{cmdline, noise.kind == NoiseKind::none
                                       ? std::nullopt
                                       : std::optional<std::uint64_t>(noise.seed)};
    if (o.mosaic) {
      write_mosaic(frames, out / "frames.bin", prov);
    } else {
      write_frames(frames, out / "frames.bin", prov);
    }
  }
  std::cout << r.to_text();
  return 0;
}

int cmd_reconstruct(const Options& o, const std::string& cmdline) {
  const PolarizationFrames frames =
      gaussian_filter(read_frames(o.in), o.filter_sigma.value_or(0.0));
  const DensityMatrix raw = reconstruct_density(frames);
  DensityMatrix rho = hermitize(raw);
  if (!o.no_renormalize) rho = renormalize_trace(rho);

  MetricsReport r;
  r.set("n_cells", static_cast<long long>(raw.grid.n_cells()));
  add_diagnostics(r, "raw_", diagnostics(raw));
  add_diagnostics(r, "", diagnostics(rho));
  r.set("purity", purity(rho));
  if (!o.out.empty()) {
    const fs::path out = o.out;
    const Provenance prov{cmdline, std::nullopt};
    write_density(raw, out / "rho_raw.bin", prov);
    write_density(rho, out / "rho.bin", prov);
    if (o.emit_csv) write_text_file(out / "rho.csv", matrix_csv(rho));
  }
  std::cout << r.to_text();
  return 0;
}

int cmd_decompose(const Options& o, const std::string& cmdline) {
  const DensityMatrix rho = read_density(o.in);
  const std::size_t k = o.k == 0 ? std::min<std::size_t>(3, rho.grid.n_cells()) : o.k;
  const DecompositionResult dec = decompose_density(rho, k);

  std::vector<double> fid(dec.modes.size(), -1.0);
  if (!o.config.empty()) {
    const PipelineConfig cfg = load_config(o.config);
    require_same_grid(cfg.grid, rho.grid, "decompose");
    auto states = eval_mixture_states(cfg.mixture, cfg.grid);
    std::vector<std::size_t> order(states.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cfg.mixture.components[a].probability > cfg.mixture.components[b].probability;
    });
    std::vector<PureStateVector> theory;
    for (std::size_t idx : order) theory.push_back(states[idx]);
    for (const auto& m : match_modes(theory, dec.modes)) fid[m.recovered_index] = m.fidelity;
  }

  MetricsReport r;
  r.set("k_max", static_cast<long long>(k));
  r.set("residual", dec.residual);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < dec.modes.size(); ++i) {
    r.set("weight_" + std::to_string(i), dec.weights[i]);
    if (fid[i] >= 0.0) r.set("fidelity_" + std::to_string(i), fid[i]);
    rows.push_back({static_cast<double>(i), dec.weights[i], fid[i]});
  }
  if (!o.out.empty()) {
    const fs::path out = o.out;
    const Provenance prov{cmdline, std::nullopt};
    for (std::size_t i = 0; i < dec.modes.size(); ++i) {
      write_mode(dec.modes[i], out / ("mode_" + std::to_string(i) + ".bin"), prov);
      if (o.emit_csv) {
        write_text_file(out / ("mode_" + std::to_string(i) + ".csv"), mode_csv(dec.modes[i]));
      }
    }
    write_text_file(out / "modes_summary.csv", table_csv({"k", "weight", "fidelity"}, rows));
  }
  std::cout << r.to_text();
  return 0;
}

int cmd_metrics(const Options& o) {
  const DensityMatrix a = read_density(o.in);
  const DensityMatrix b = read_density(o.in_b);
  MetricsReport r;
  r.set("trace_distance", trace_distance(a, b));
  r.set("trace_norm_distance", trace_norm_distance(a, b));
  r.set("purity_a", purity(hermitize(a)));
  r.set("purity_b", purity(hermitize(b)));
  add_diagnostics(r, "a_", diagnostics(a));
  add_diagnostics(r, "b_", diagnostics(b));
  std::cout << r.to_text();
  return 0;
}

int cmd_scan(const Options& o, const std::string& cmdline) {
  MetricsReport r;
  std::optional<DensityMatrix> rho;
  if (!o.config.empty()) {
    const PipelineConfig cfg = load_config(o.config);
    rho = assemble_density_matrix(cfg.mixture, cfg.grid);
  } else if (!o.in.empty()) {
    rho = read_density(o.in);
  }
  const std::size_t n = rho ? rho->grid.n_cells() : o.n;
  const ResourceReport res = resource_report(n);
  r.set("n_cells", static_cast<long long>(n));
  r.set("scan_measurements", static_cast<long long>(res.scan_measurements));
  r.set("direct_measurements", static_cast<long long>(res.direct_measurements));
  r.set("measuring_time_ratio",
        static_cast<double>(res.scan_measurements) / static_cast<double>(res.direct_measurements));
  r.set("scan_photon_efficiency", res.scan_photon_efficiency);
  r.set("direct_photon_efficiency", res.direct_photon_efficiency);

  if (rho) {
    ScanPlan plan;
    plan.n_cells = n;
    if (o.phase_steps == 4) {
      plan.phase_steps = ScanPlan::four_step_phases();
    } else if (o.phase_steps != 2) {
      throw StageError("config", "--phase-steps must be 2 or 4");
    }
    const NoiseModel noise = noise_from_flags(o.budget, o.noise_kind, o.readout_sigma, o.seed);
    const DensityMatrix est = hermitize(scan_reconstruct(*rho, plan, noise));
    r.set("plan_measurements_total", static_cast<long long>(plan.measurements_total()));
    r.set("plan_measurements_simulated", static_cast<long long>(plan.measurements_simulated()));
    r.set("trace_distance", trace_distance(*rho, est));
    if (!o.out.empty()) {
      const Provenance prov{cmdline, noise.kind == NoiseKind::none
                                         ? std::nullopt
                                         : std::optional<std::uint64_t>(noise.seed)};
      write_density(est, fs::path(o.out) / "rho_scan.bin", prov);
    }
  }
  std::cout << r.to_text();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct density-matrix tomography with a polarization camera"};
  app.require_subcommand(1);
  Options o;
  const std::string cmdline = joined_command_line(argc, argv);

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output directory"); };
  auto add_noise = [&](CLI::App* sub) {
    sub->add_option("--budget", o.budget, "Photon budget (counts = Gamma * budget)");
    sub->add_option("--seed", o.seed, "Random seed (required with noise)");
    sub->add_option("--noise", o.noise_kind, "none | poisson | poisson_plus_readout");
    sub->add_option("--readout-sigma", o.readout_sigma, "Readout noise, counts");
  };

  auto* pipeline = app.add_subcommand("pipeline", "Run the full simulate-and-reconstruct chain");
  pipeline->add_option("--config", o.config, "JSON config")->required();
  pipeline->add_option("--seed", o.seed, "Random seed");
  pipeline->add_option("--budget", o.budget, "Photon budget");
  pipeline->add_option("--filter-sigma", o.filter_sigma, "Gaussian filter sigma, pixels");
  pipeline->add_flag("--no-renormalize", o.no_renormalize, "Skip trace renormalization");
  pipeline->add_flag("--emit-csv", o.emit_csv, "Write CSV dumps");
  pipeline->add_flag("--mosaic", o.mosaic, "Store frames as a 2x2 analyzer mosaic");
  add_out(pipeline);

  auto* generate = app.add_subcommand("generate", "Assemble the mixed state from a config");
  generate->add_option("--config", o.config, "JSON config")->required();
  generate->add_flag("--emit-csv", o.emit_csv, "Write CSV dumps");
  add_out(generate);

  auto* forward = app.add_subcommand("forward", "Simulate analyzer frames from a density matrix");
  forward->add_option("--in", o.in, "Density array file")->required();
  forward->add_flag("--mosaic", o.mosaic, "Store frames as a 2x2 analyzer mosaic");
  add_noise(forward);
  add_out(forward);

  auto* reconstruct = app.add_subcommand("reconstruct", "Invert frames to a density matrix");
  reconstruct->add_option("--in", o.in, "Frames or mosaic array file")->required();
  reconstruct->add_option("--filter-sigma", o.filter_sigma, "Gaussian filter sigma, pixels");
  reconstruct->add_flag("--no-renormalize", o.no_renormalize, "Skip trace renormalization");
  reconstruct->add_flag("--emit-csv", o.emit_csv, "Write CSV dumps");
  add_out(reconstruct);

  auto* decompose = app.add_subcommand("decompose", "Split a density matrix into modes");
  decompose->add_option("--in", o.in, "Density array file")->required();
  decompose->add_option("--k", o.k, "Number of modes to keep");
  decompose->add_option("--config", o.config, "Config whose mixture gives theory modes");
  decompose->add_flag("--emit-csv", o.emit_csv, "Write mode profile CSVs");
  add_out(decompose);

  auto* metrics = app.add_subcommand("metrics", "Compare two density matrices");
  metrics->add_option("--a", o.in, "First density array file")->required();
  metrics->add_option("--b", o.in_b, "Second density array file")->required();

  auto* scan = app.add_subcommand("scan-baseline", "Two-aperture raster scan baseline");
  scan->add_option("--config", o.config, "JSON config");
  scan->add_option("--in", o.in, "Density array file");
  scan->add_option("--n", o.n, "Dimension for resource accounting only");
  scan->add_option("--phase-steps", o.phase_steps, "2 or 4");
  add_noise(scan);
  add_out(scan);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pipeline) return cmd_pipeline(o, cmdline);
    if (*generate) return cmd_generate(o, cmdline);
    if (*forward) return cmd_forward(o, cmdline);
    if (*reconstruct) return cmd_reconstruct(o, cmdline);
    if (*decompose) return cmd_decompose(o, cmdline);
    if (*metrics) return cmd_metrics(o);
    if (*scan) {
      if (o.config.empty() && o.in.empty() && o.n == 0) {
        throw StageError("config", "scan-baseline needs --config, --in or --n");
      }
      return cmd_scan(o, cmdline);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
