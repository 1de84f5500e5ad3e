#include <benchmark/benchmark.h>

#include "cascade/builders.hpp"
#include "cascade/invariants.hpp"
#include "cascade/random.hpp"
#include "cascade/rhs.hpp"

namespace {

void BM_EvalRhs(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto system = cascade::CascadeSystem::inviscid(cascade::build_s3_diag(2, r, -0.5, 1.0));
  cascade::UniformSampler sampler(1);
  const auto v = sampler.uniform_vector(r + 1, -1, 1);
  std::vector<double> out;
  for (auto _ : state) {
    cascade::eval_rhs_into(system, v, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(system.table.size()));
}
BENCHMARK(BM_EvalRhs)->Arg(20)->Arg(40)->Arg(160);

void BM_BuildGeneral(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const auto h = cascade::h_diag(2, 40, -0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(cascade::build_general(2, 40, s, 0.0, h));
}
BENCHMARK(BM_BuildGeneral)->Arg(2)->Arg(3);

void BM_SolveInvariants(benchmark::State& state) {
  const auto table = cascade::build_s2_offdiag(2, static_cast<int>(state.range(0)), -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(cascade::solve_invariant_weights(table, 1));
}
BENCHMARK(BM_SolveInvariants)->Arg(20)->Arg(40);

}  // namespace
BENCHMARK_MAIN();
