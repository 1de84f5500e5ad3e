#include <benchmark/benchmark.h>

#include "cascade/builders.hpp"
#include "cascade/dynamics.hpp"
#include "cascade/stationary.hpp"

namespace {

void BM_Integrate(benchmark::State& state) {
  const int r = 20;
  const auto system = cascade::CascadeSystem::inviscid(cascade::build_s2_diag(2, r, -0.5, 1.0));
  const auto v0 = cascade::stationary_profile(2, r, 1e-3);
  cascade::IntegratorSpec spec;
  spec.method = state.range(0) == 0 ? cascade::Method::RK4 : cascade::Method::RK45;
  spec.duration = 1.0;
  spec.sample_stride = 100;
  const auto w = cascade::energy_weights(2, r);
  for (auto _ : state) benchmark::DoNotOptimize(cascade::integrate(system, v0, spec, w));
}
BENCHMARK(BM_Integrate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GammaScan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cascade::gamma_scan(cascade::Family::S2OffDiag, 2, 20, -3, 3, 1e-2, 1e-9));
  }
}
BENCHMARK(BM_GammaScan)->Unit(benchmark::kMillisecond);

}  // namespace
