#include <benchmark/benchmark.h>

#include "summability/engine.hpp"
#include "summability/kernel.hpp"
#include "summability/spectrum.hpp"

namespace sm = summability;

static void BM_ForwardExponentialSine(benchmark::State& state) {
  const sm::Kernel k = sm::Kernel::exponential(1.0);
  const sm::TestFunction f = sm::functions::sine(sm::Flavor::Additive);
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sm::apply_forward(k, f, x));
}
BENCHMARK(BM_ForwardExponentialSine)->Arg(8)->Arg(128)->Arg(2048);

static void BM_ForwardPowerLawSine(benchmark::State& state) {
  const sm::Kernel k = sm::Kernel::power_law(0.5);
  const sm::TestFunction f = sm::functions::sine(sm::Flavor::Multiplicative);
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sm::apply_forward(k, f, x));
}
BENCHMARK(BM_ForwardPowerLawSine)->Arg(8)->Arg(128)->Arg(2048);

static void BM_DualPowerLawSine(benchmark::State& state) {
  const sm::Kernel k = sm::Kernel::power_law(0.5);
  const sm::TestFunction f = sm::functions::sine(sm::Flavor::Multiplicative);
  for (auto _ : state) benchmark::DoNotOptimize(sm::apply_dual(k, f, 64.0));
}
BENCHMARK(BM_DualPowerLawSine);

static void BM_ConvolveExpSums(benchmark::State& state) {
  const sm::Kernel a = sm::Kernel::exponential(1.0);
  const sm::Kernel b = sm::Kernel::counterexample_additive(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sm::convolve(a, b));
}
BENCHMARK(BM_ConvolveExpSums)->Unit(benchmark::kMillisecond);

static void BM_ConvolveSampled(benchmark::State& state) {
  const sm::Kernel a = sm::convolve(sm::Kernel::exponential(1.0), sm::Kernel::exponential(2.0));
  const sm::Kernel b = sm::Kernel::exponential(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(sm::convolve(a, b));
}
BENCHMARK(BM_ConvolveSampled)->Unit(benchmark::kMillisecond);

static void BM_ClassifyCounterexample(benchmark::State& state) {
  const sm::Kernel k = sm::Kernel::counterexample_additive(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sm::classify_wiener(k));
}
BENCHMARK(BM_ClassifyCounterexample)->Unit(benchmark::kMillisecond);

static void BM_EstimateLimitHolder2(benchmark::State& state) {
  const auto m = sm::methods::holder(2);
  const sm::TestFunction f = sm::functions::sine(sm::Flavor::Multiplicative);
  for (auto _ : state) benchmark::DoNotOptimize(sm::estimate_limit(m, f));
}
BENCHMARK(BM_EstimateLimitHolder2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
