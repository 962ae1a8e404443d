#include <benchmark/benchmark.h>

#include "polartomo/decompose.hpp"
#include "polartomo/filter.hpp"
#include "polartomo/forward.hpp"
#include "polartomo/noise.hpp"
#include "polartomo/pipeline.hpp"
#include "polartomo/reconstruct.hpp"
#include "polartomo/stategen.hpp"

namespace pt = polartomo;

namespace {

pt::DensityMatrix hg_state(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  return pt::assemble_density_matrix(pt::hermite_gauss_benchmark_mixture(), pt::make_grid(n, 2.0));
}

void BM_Forward(benchmark::State& state) {
  const auto rho = hg_state(state);
  for (auto _ : state) benchmark::DoNotOptimize(pt::forward_frames(rho, rho.grid));
}

void BM_Noise(benchmark::State& state) {
  const auto rho = hg_state(state);
  const auto frames = pt::forward_frames(rho, rho.grid);
  const pt::NoiseModel noise{pt::NoiseKind::poisson, 1e6, 0.0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(pt::apply_noise(frames, noise));
}

void BM_Filter(benchmark::State& state) {
  const auto rho = hg_state(state);
  const auto frames = pt::forward_frames(rho, rho.grid);
  for (auto _ : state) benchmark::DoNotOptimize(pt::gaussian_filter(frames, 2.0));
}

void BM_Reconstruct(benchmark::State& state) {
  const auto rho = hg_state(state);
  const auto frames = pt::forward_frames(rho, rho.grid);
  for (auto _ : state) benchmark::DoNotOptimize(pt::hermitize(pt::reconstruct_density(frames)));
}

void BM_Decompose(benchmark::State& state) {
  const auto rho = hg_state(state);
  for (auto _ : state) benchmark::DoNotOptimize(pt::decompose_density(rho, 3));
}

void BM_Pipeline(benchmark::State& state) {
  pt::PipelineConfig cfg;
  cfg.grid = pt::make_grid(static_cast<std::size_t>(state.range(0)), 2.0);
  cfg.mixture = pt::hermite_gauss_benchmark_mixture();
  cfg.noise = {pt::NoiseKind::poisson, 1e6, 0.0, 1};
  cfg.seed = 1;
  cfg.filter_sigma_px = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(pt::run_pipeline(cfg));
}

}  // namespace

BENCHMARK(BM_Forward)->Arg(64)->Arg(128)->Arg(580);
BENCHMARK(BM_Noise)->Arg(128)->Arg(580);
BENCHMARK(BM_Filter)->Arg(128)->Arg(580);
BENCHMARK(BM_Reconstruct)->Arg(64)->Arg(128)->Arg(580);
BENCHMARK(BM_Decompose)->Arg(64)->Arg(128)->Arg(580)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pipeline)->Arg(128)->Arg(580)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
