#include <benchmark/benchmark.h>

#include "nsgeo/flow.hpp"
#include "nsgeo/init.hpp"
#include "nsgeo/spectral_field.hpp"

using namespace nsgeo;

static void BM_FftRoundtrip(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)));
  const auto u = abc_field(g);
  for (auto _ : state) benchmark::DoNotOptimize(fft_roundtrip(u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_FftRoundtrip)->Arg(16)->Arg(32)->Arg(64);

static void BM_LerayProject(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)));
  const auto u = random_divfree_field(g, 1, g.n / 4);
  for (auto _ : state) benchmark::DoNotOptimize(leray_project(u));
}
BENCHMARK(BM_LerayProject)->Arg(32)->Arg(64);

static void BM_NsRhs(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)));
  const auto u = random_divfree_field(g, 2, g.n / 4);
  for (auto _ : state) benchmark::DoNotOptimize(ns_rhs(u, 0.1));
}
BENCHMARK(BM_NsRhs)->Arg(16)->Arg(32);

static void BM_FlowStep(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)));
  FluidParams p;
  p.nu = 0.1;
  p.dt = 1e-3;
  auto st = FlowState::from_velocity(random_divfree_field(g, 3, g.n / 4));
  for (auto _ : state) {
    st = step(st, p);
    benchmark::DoNotOptimize(st.time);
  }
}
BENCHMARK(BM_FlowStep)->Arg(16)->Arg(32);

static void BM_Strain(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)));
  const auto u = abc_field(g);
  for (auto _ : state) benchmark::DoNotOptimize(strain(u).comp[0][0]);
}
BENCHMARK(BM_Strain)->Arg(16)->Arg(32);
