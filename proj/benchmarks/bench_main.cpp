#include <benchmark/benchmark.h>

#include "setcalc/catalog.hpp"
#include "setcalc/envelope.hpp"
#include "setcalc/gradient.hpp"
#include "setcalc/metric.hpp"
#include "setcalc/polyline.hpp"
#include "setcalc/verify.hpp"

using namespace setcalc;

namespace {

SampledFn bench_fn(int n) {
  return random_piecewise_fn(Grid1D(-1.0, 1.0, n), 42, 5, 4.0, true);
}

void BM_envelope_sweep(benchmark::State& state) {
  const SampledFn f = bench_fn(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lip_lower_envelope(f, 4.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_envelope_sweep)->Arg(1000)->Arg(4000)->Arg(16000)->Complexity();

// The O(n^2) reference the sweep is tested against; kept here so a
// regression in the sweep's advantage is visible in one run.
void BM_envelope_reference(benchmark::State& state) {
  const SampledFn f = bench_fn(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(envelope_oracle(f, 4.0, false));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_envelope_reference)->Arg(1000)->Arg(4000)->Complexity();

void BM_graph_hausdorff(benchmark::State& state) {
  const Grid1D g(-1.0, 1.0, static_cast<int>(state.range(0)));
  const ClassPair sign = make_catalog_entry("sign", g).fn;
  const SampledFn lo = lip_lower_envelope(sign.lower, 4.0);
  const SampledFn hi = lip_upper_envelope(sign.upper, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(graph_hausdorff(lo, hi));
}
BENCHMARK(BM_graph_hausdorff)->Arg(2001)->Arg(4000);

void BM_s_metric(benchmark::State& state) {
  const Grid1D g(-1.0, 1.0, static_cast<int>(state.range(0)));
  const ClassPair sign = make_catalog_entry("sign", g).fn;
  const ClassPair zero = make_catalog_entry("zero", g).fn;
  const std::vector<double> ks = default_k_schedule();
  for (auto _ : state) benchmark::DoNotOptimize(s_metric(sign, zero, ks).value);
}
BENCHMARK(BM_s_metric)->Arg(2001)->Arg(4000);

void BM_clarke_gradient(benchmark::State& state) {
  const SampledFn f = bench_fn(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clarke_gradient(f));
}
BENCHMARK(BM_clarke_gradient)->Arg(2001)->Arg(16000);

void BM_closure_gradient(benchmark::State& state) {
  const Grid1D g(-1.0, 1.0, static_cast<int>(state.range(0)));
  const ClassPair abs = make_catalog_entry("abs", g).fn;
  const SmoothingSchedule sched = SmoothingSchedule::standard(g);
  for (auto _ : state) benchmark::DoNotOptimize(closure_gradient(abs.lower, sched));
}
BENCHMARK(BM_closure_gradient)->Arg(501)->Arg(2001);

}  // namespace

BENCHMARK_MAIN();
