// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick a
// family; the Arg is the point count or the trial count.

#include <benchmark/benchmark.h>

#include "tightpovm/constructions.hpp"
#include "tightpovm/kernels.hpp"
#include "tightpovm/rng.hpp"
#include "tightpovm/tomo.hpp"

using namespace tightpovm;

namespace {

struct Cloud {
  std::vector<StateVector> points;
  std::vector<double> weights;
};

Cloud make_cloud(int d, int n) {
  Rng rng(1);
  Cloud c;
  for (int i = 0; i < n; ++i) {
    c.points.push_back(haar_random_state(d, rng));
    c.weights.push_back(1.0 / n);
  }
  return c;
}

template <ExecutionPolicy P>
void BM_FramePotential(benchmark::State& state) {
  const auto c = make_cloud(4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::frame_potential(c.points, c.weights, 2, P));
}

template <ExecutionPolicy P>
void BM_FramePotentialGradient(benchmark::State& state) {
  const auto c = make_cloud(4, static_cast<int>(state.range(0)));
  std::vector<StateVector> grad;
  for (auto _ : state) {
    kernels::frame_potential_gradient(c.points, c.weights, 2, grad, P);
    benchmark::DoNotOptimize(grad.data());
  }
}

template <ExecutionPolicy P>
void BM_Tomography(benchmark::State& state) {
  const auto f = sic_povm(2);
  TomographyConfig cfg;
  cfg.trials = state.range(0);
  cfg.seed = 3;
  for (auto _ : state) benchmark::DoNotOptimize(run_tomography(f, cfg, P).mean_sq_error);
}

}  // namespace

BENCHMARK(BM_FramePotential<ExecutionPolicy::serial>)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_FramePotential<ExecutionPolicy::parallel>)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_FramePotentialGradient<ExecutionPolicy::serial>)->Arg(64)->Arg(256);
BENCHMARK(BM_FramePotentialGradient<ExecutionPolicy::parallel>)->Arg(64)->Arg(256);
BENCHMARK(BM_Tomography<ExecutionPolicy::serial>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Tomography<ExecutionPolicy::parallel>)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
