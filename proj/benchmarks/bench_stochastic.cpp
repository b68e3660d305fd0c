#include <benchmark/benchmark.h>

#include <cmath>

#include "nsgeo/feynman_kac.hpp"
#include "nsgeo/rng.hpp"

using namespace nsgeo;

static void BM_PhiloxGaussian(benchmark::State& state) {
  Philox rng(1, 2);
  double acc = 0.0;
  for (auto _ : state) acc += rng.gaussian();
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_PhiloxGaussian);

static void BM_FrameStepFlat(benchmark::State& state) {
  const auto chart = flat_chart();
  FrameState st;
  Philox rng(1, 3);
  const double dt = 1e-3, sh = std::sqrt(dt);
  for (auto _ : state) {
    st = step_frame_sde(st, chart, nullptr, Vec3(sh * rng.gaussian(), sh * rng.gaussian(), sh * rng.gaussian()),
                        0.1, dt);
    benchmark::DoNotOptimize(st.x);
  }
}
BENCHMARK(BM_FrameStepFlat);

static void BM_FrameStepConformal(benchmark::State& state) {
  const auto chart = conformal_chart(0.1);
  FrameState st;
  st.x = Vec3(1, 2, 3);
  st.r = chart.frame(st.x);
  Philox rng(1, 4);
  const double dt = 1e-3, sh = std::sqrt(dt);
  for (auto _ : state) {
    st = step_frame_sde(st, chart, nullptr, Vec3(sh * rng.gaussian(), sh * rng.gaussian(), sh * rng.gaussian()),
                        0.1, dt);
    benchmark::DoNotOptimize(st.x);
  }
}
BENCHMARK(BM_FrameStepConformal);

static void BM_ResolventStep(benchmark::State& state) {
  FrameState st;
  Mat3 k = Mat3::Zero();
  k(0, 1) = k(1, 0) = 0.4;
  const Mat3 ric = 0.1 * Mat3::Identity();
  for (auto _ : state) {
    step_resolvent(st, k, ric, 0.1, 1e-3);
    benchmark::DoNotOptimize(st.q1);
  }
}
BENCHMARK(BM_ResolventStep);
