// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polartomo/array_io.hpp"
#include "polartomo/decompose.hpp"
#include "polartomo/forward.hpp"
#include "polartomo/metrics.hpp"
#include "polartomo/pipeline.hpp"
#include "polartomo/reconstruct.hpp"
#include "polartomo/scan_baseline.hpp"
#include "polartomo/stategen.hpp"

namespace pt = polartomo;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

pt::PipelineConfig noiseless(const pt::MixtureSpec& mix, std::size_t n, double extent) {
  pt::PipelineConfig cfg;
  cfg.grid = pt::make_grid(n, extent);
  cfg.mixture = mix;
  return cfg;
}

void roundtrip_identity(Outcome& o) {
  const auto t0 = Clock::now();
  const double po = pt::run_pipeline(noiseless(pt::phase_only_benchmark_mixture(), 128, 2.0))
                        .report.get_number("trace_distance")
                        .value();
  const double hg = pt::run_pipeline(noiseless(pt::hermite_gauss_benchmark_mixture(), 128, 2.0))
                        .report.get_number("trace_distance")
                        .value();
  const double t = seconds_since(t0);
  o.detail << "N=128 td phase_only=" << fmt(po) << " hermite_gauss=" << fmt(hg)
           << " time=" << fmt(t) << "s";
  o.require(po < 1e-10, "phase_only td < 1e-10");
  o.require(hg < 1e-10, "hermite_gauss td < 1e-10");
  o.require(t < 5.0, "runtime < 5 s");
}

void oracle_equivalence(Outcome& o) {
  const auto t0 = Clock::now();
  double forward_err = 0.0;
  std::mt19937_64 rng(2024);
  std::vector<pt::DensityMatrix> cases;
  for (std::size_t n : {2u, 7u, 16u, 64u}) {
    cases.push_back(pt::testing::random_density(pt::make_grid(n, 2.0), 3, rng));
  }
  cases.push_back(
      pt::assemble_density_matrix(pt::hermite_gauss_benchmark_mixture(), pt::make_grid(64, 2.0)));
  cases.push_back(
      pt::assemble_density_matrix(pt::phase_only_benchmark_mixture(), pt::make_grid(64, 2.0)));
  for (const auto& rho : cases) {
    const auto fast = pt::forward_frames(rho, rho.grid);
    const auto literal = pt::testing::literal_forward_frames(rho);
    forward_err = std::max({forward_err, pt::testing::max_abs_diff(fast.gamma_d, literal.gamma_d),
                            pt::testing::max_abs_diff(fast.gamma_a, literal.gamma_a),
                            pt::testing::max_abs_diff(fast.gamma_r, literal.gamma_r),
                            pt::testing::max_abs_diff(fast.gamma_l, literal.gamma_l)});
  }

  double scan_err = 0.0;
  for (std::size_t n : {4u, 16u, 32u}) {
    for (const auto& rho :
         {pt::assemble_density_matrix(pt::hermite_gauss_benchmark_mixture(), pt::make_grid(n, 2.0)),
          pt::testing::random_density(pt::make_grid(n, 2.0), 2, rng)}) {
      const auto direct = pt::reconstruct_density(pt::forward_frames(rho, rho.grid));
      const auto scan = pt::scan_reconstruct(rho, pt::ScanPlan{n}, {});
      scan_err = std::max({scan_err, pt::testing::max_abs_diff(scan.elements, direct.elements),
                           pt::trace_distance(scan, direct)});
    }
  }
  const double t = seconds_since(t0);
  o.detail << "forward vs literal (N<=64) max=" << fmt(forward_err)
           << " scan vs direct (N<=32) max=" << fmt(scan_err) << " time=" << fmt(t) << "s";
  o.require(forward_err < 1e-12, "forward oracle < 1e-12");
  o.require(scan_err < 1e-12, "scan oracle < 1e-12");
  o.require(t < 30.0, "runtime < 30 s");
}

void decomposition_recovery(Outcome& o) {
  const auto g = pt::make_grid(128, 2.0);
  const auto mix = pt::hermite_gauss_benchmark_mixture();
  const auto states = pt::eval_mixture_states(mix, g);
  const auto result = pt::run_pipeline(noiseless(mix, 128, 2.0));
  const auto& dec = result.decomposition;
  const double expected[3] = {0.45, 0.33, 0.22};
  const std::size_t generating[3] = {2, 1, 0};
  double weight_err = 0.0, min_fid = 1.0;
  for (std::size_t k = 0; k < 3; ++k) {
    weight_err = std::max(weight_err, std::abs(dec.weights[k] - expected[k]));
    min_fid = std::min(min_fid, pt::mode_fidelity(dec.modes[k], states[generating[k]]));
  }
  o.detail << "weights=(" << dec.weights[0] << ", " << dec.weights[1] << ", " << dec.weights[2]
           << ") max weight err=" << fmt(weight_err) << " min fidelity 1-F=" << fmt(1 - min_fid);
  o.require(weight_err < 1e-9, "weights within 1e-9");
  o.require(min_fid > 1 - 1e-9, "fidelity > 1 - 1e-9");
}

void full_scale(Outcome& o) {
  for (const auto& [name, mix] :
       {std::pair{"hermite_gauss", pt::hermite_gauss_benchmark_mixture()},
        std::pair{"phase_only", pt::phase_only_benchmark_mixture()}}) {
    const auto t0 = Clock::now();
    const auto result = pt::run_pipeline(noiseless(mix, 580, 2.001));
    const double t = seconds_since(t0);
    const double td = result.report.get_number("trace_distance").value();
    o.detail << name << ": N=580 td=" << fmt(td) << " time=" << fmt(t) << "s  ";
    o.require(td < 1e-8, std::string(name) + " td < 1e-8");
    o.require(t < 60.0, std::string(name) + " wall time < 60 s");
  }
}

struct SweepPoint {
  double budget;
  double mean_td;
  double mean_td_unrenormalized;
};

std::vector<SweepPoint> sweep(const pt::MixtureSpec& mix, double sigma,
                              const std::vector<double>& budgets, int seeds) {
  std::vector<SweepPoint> out;
  for (double b : budgets) {
    double sum = 0.0, sum_raw = 0.0;
    for (int s = 1; s <= seeds; ++s) {
      auto cfg = noiseless(mix, 128, 2.0);
      cfg.noise = {pt::NoiseKind::poisson, b, 0.0, static_cast<std::uint64_t>(s)};
      cfg.seed = static_cast<std::uint64_t>(s);
      cfg.filter_sigma_px = sigma;
      const auto r = pt::run_pipeline(cfg).report;
      sum += r.get_number("trace_distance").value();
      sum_raw += r.get_number("trace_distance_hermitized").value();
    }
    out.push_back({b, sum / seeds, sum_raw / seeds});
  }
  return out;
}

double loglog_slope(const std::vector<SweepPoint>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (const auto& p : pts) {
    const double x = std::log10(p.budget), y = std::log10(p.mean_td);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool decreasing(const std::vector<SweepPoint>& pts) {
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (!(pts[k].mean_td < pts[k - 1].mean_td)) return false;
  }
  return true;
}

void describe(Outcome& o, const char* label, const std::vector<SweepPoint>& pts) {
  o.detail << "\n      " << label << ":";
  for (const auto& p : pts) {
    o.detail << " " << fmt(p.budget) << "->" << fmt(p.mean_td) << " (unrenorm " << fmt(p.mean_td_unrenormalized)
             << ")";
  }
  o.detail << " slope=" << fmt(loglog_slope(pts));
}

void noise_envelope(Outcome& o) {
  const std::vector<double> budgets{1e4, 1e5, 1e6, 1e7};
  const int seeds = 10;
  const auto po = pt::phase_only_benchmark_mixture();

  const auto filtered = sweep(po, 2.0, budgets, seeds);
  const auto unfiltered = sweep(po, 0.0, budgets, seeds);
  const auto hg_filtered = sweep(pt::hermite_gauss_benchmark_mixture(), 2.0, {1e6}, seeds);

  const double level = filtered[2].mean_td;
  const double slope = loglog_slope(unfiltered);
  o.detail << "phase_only budget=1e6 sigma=2 mean td=" << fmt(level) << " (unrenorm "
           << fmt(filtered[2].mean_td_unrenormalized) << "); hermite_gauss " << fmt(hg_filtered[0].mean_td)
           << " (unrenorm " << fmt(hg_filtered[0].mean_td_unrenormalized) << ")";
  describe(o, "sweep sigma=0", unfiltered);
  describe(o, "sweep sigma=2", filtered);
  const double filtered_slope = loglog_slope(filtered);
  o.detail << "\n      slope is gated on the sigma=0 sweep; the sigma=2 sweep flattens on the"
           << " filter bias (slope " << fmt(filtered_slope) << ", "
           << (std::abs(filtered_slope + 0.5) <= 0.15 ? "inside" : "outside") << " -0.5 +- 0.15)";
  o.require(level > 0.02 && level < 0.35, "mean td at 1e6, sigma=2 in (0.02, 0.35)");
  o.require(decreasing(unfiltered), "shot-noise sweep decreasing");
  o.require(std::abs(slope + 0.5) <= 0.15, "shot-noise slope -0.5 +- 0.15");
  o.require(decreasing(filtered), "filtered sweep decreasing");
}

void invariants(Outcome& o) {
  std::mt19937_64 rng(7);
  double frame_sum = 0.0, axiom_violation = 0.0, unitary = 0.0, gauge = 0.0;
  bool idempotent = true, io_exact = true;
  const fs::path dir = fs::temp_directory_path() / "polartomo_acceptance_io";
  fs::create_directories(dir);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) * 3;
    const auto g = pt::make_grid(n, 2.0);
    const auto a = pt::testing::random_density(g, 1 + trial % 4, rng);
    const auto b = pt::testing::random_density(g, 2, rng);
    const auto c = pt::testing::random_density(g, 3, rng);

    frame_sum = std::max(frame_sum, pt::frame_sum_defect(pt::forward_frames(a, g)));

    const double ab = pt::trace_distance(a, b), ba = pt::trace_distance(b, a);
    axiom_violation = std::max({axiom_violation, std::abs(ab - ba), std::max(0.0, -ab),
                                pt::trace_distance(a, a),
                                std::max(0.0, ab - pt::trace_distance(a, c) - pt::trace_distance(c, b))});
    if (n <= 64) {
      const auto u = pt::testing::random_unitary(n, rng);
      const double rotated = pt::trace_distance({u * a.elements * u.adjoint(), g},
                                                {u * b.elements * u.adjoint(), g});
      unitary = std::max(unitary, std::abs(rotated - ab));
    }

    pt::DensityMatrix noisy = a;
    for (Eigen::Index i = 0; i < noisy.elements.rows(); ++i)
      for (Eigen::Index j = 0; j < noisy.elements.cols(); ++j)
        noisy.elements(i, j) += pt::Complex(1e-3 * (i - j), 1e-3 * (i * j % 5));
    const auto h1 = pt::hermitize(noisy);
    idempotent = idempotent && (pt::hermitize(h1).elements == h1.elements);

    const auto psi = pt::testing::random_pure_state(g, rng);
    const auto phi = pt::testing::random_pure_state(g, rng);
    const double f0 = pt::mode_fidelity(psi, phi);
    for (double theta : {0.4, 2.2, -1.3}) {
      const pt::PureStateVector rotated{psi.amplitudes * std::polar(1.0, theta), g};
      gauge = std::max({gauge, std::abs(pt::mode_fidelity(rotated, phi) - f0),
                        std::abs(pt::mode_fidelity(pt::fix_gauge(rotated), phi) - f0)});
    }

    pt::write_density(noisy, dir / "rho.bin");
    io_exact = io_exact && (pt::read_density(dir / "rho.bin").elements == noisy.elements);
    pt::write_mode(psi, dir / "mode.bin");
    io_exact = io_exact && (pt::read_mode(dir / "mode.bin").amplitudes == psi.amplitudes);
    const auto frames = pt::forward_frames(a, g);
    pt::write_frames(frames, dir / "frames.bin");
    const auto back = pt::read_frames(dir / "frames.bin");
    io_exact = io_exact && back.gamma_d == frames.gamma_d && back.gamma_a == frames.gamma_a &&
               back.gamma_r == frames.gamma_r && back.gamma_l == frames.gamma_l;
  }
  fs::remove_all(dir);
  o.detail << "frame sum=" << fmt(frame_sum) << " metric axioms=" << fmt(axiom_violation)
           << " unitary=" << fmt(unitary) << " hermitize idempotent=" << (idempotent ? "yes" : "no")
           << " gauge=" << fmt(gauge) << " io bit-exact=" << (io_exact ? "yes" : "no");
  o.require(frame_sum < 1e-12, "D+A = R+L < 1e-12");
  o.require(axiom_violation < 1e-10, "metric axioms < 1e-10");
  o.require(unitary < 1e-10, "unitary invariance < 1e-10");
  o.require(idempotent, "hermitize idempotent");
  o.require(gauge < 1e-12, "fidelity gauge invariance < 1e-12");
  o.require(io_exact, "I/O round trip bit-exact");
}

void resource_accounting(Outcome& o) {
  const auto r = pt::resource_report(580);
  o.detail << "n=580 scan=" << r.scan_measurements << " direct=" << r.direct_measurements
           << " ratio/n^2=" << static_cast<double>(r.scan_measurements) / (580.0 * 580.0)
           << " scan photon efficiency=" << fmt(r.scan_photon_efficiency);
  o.require(r.scan_measurements == 672800, "672,800 scan measurements");
  o.require(r.direct_measurements == 1, "1 direct frame set");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"noiseless round trip", roundtrip_identity},
      {"oracle equivalence", oracle_equivalence},
      {"decomposition recovery", decomposition_recovery},
      {"full-scale run", full_scale},
      {"noise envelope", noise_envelope},
      {"invariant suites", invariants},
      {"resource accounting", resource_accounting},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", index, name,
                seconds_since(t0), o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
