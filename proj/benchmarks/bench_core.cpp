#include <benchmark/benchmark.h>

#include "morrey/corpus.hpp"
#include "morrey/field_ops.hpp"
#include "morrey/symmetrize.hpp"

namespace {

morrey::GridSpec bench_spec() {
  morrey::GridSpec s;
  s.n = 2;
  s.L = 8.0;
  s.h = 0.125;
  s.p = 4.0;
  return s;
}

void BM_DirichletEnergy(benchmark::State& state) {
  auto u = morrey::random_smooth_field(bench_spec(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(morrey::dirichlet_energy(u));
}
BENCHMARK(BM_DirichletEnergy);

void BM_NodalGradient(benchmark::State& state) {
  auto u = morrey::random_smooth_field(bench_spec(), 7);
  std::vector<double> g;
  for (auto _ : state)
    benchmark::DoNotOptimize(morrey::energy_and_nodal_gradient(u, g));
}
BENCHMARK(BM_NodalGradient);

void BM_HolderSeminorm(benchmark::State& state) {
  auto u = morrey::random_smooth_field(bench_spec(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(morrey::holder_seminorm(u));
}
BENCHMARK(BM_HolderSeminorm);

void BM_CapRearrange(benchmark::State& state) {
  morrey::PolarSpec ps;
  ps.n = 2;
  ps.p = 4.0;
  ps.n_shells = 64;
  ps.dt = 0.125;
  ps.n_theta = 512;
  auto v = morrey::random_polar_field(ps, 11);
  for (auto _ : state) benchmark::DoNotOptimize(morrey::cap_rearrange(v));
}
BENCHMARK(BM_CapRearrange);

}  // namespace

BENCHMARK_MAIN();
