#include <benchmark/benchmark.h>

#include "igasc/baselines.hpp"
#include "igasc/estimation.hpp"
#include "igasc/forecasting.hpp"
#include "igasc/recursion.hpp"
#include "igasc/simulation.hpp"
#include "igasc/specfun.hpp"

using namespace igasc;

namespace {

Theta bench_theta(Family f) {
  return Theta{0.3, 0.2, 0.7, f == Family::TVol ? 10.0 : f == Family::WeibullDur ? 2.0 : 0.0};
}

const std::vector<double>& bench_data(Family f, std::size_t n) {
  static std::vector<double> cache[4];
  auto& v = cache[static_cast<int>(f)];
  if (v.size() != n) v = simulate(SimConfig{f, bench_theta(f), n, 0, 1}).y;
  return v;
}

void BM_Filter(benchmark::State& state) {
  const auto f = static_cast<Family>(state.range(0));
  const auto& y = bench_data(f, 10000);
  const Theta th = bench_theta(f);
  for (auto _ : state) benchmark::DoNotOptimize(filter(f, y, th).loglik);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(y.size()));
  state.SetLabel(std::string(family_name(f)));
}
BENCHMARK(BM_Filter)->DenseRange(0, 3);

void BM_Fit(benchmark::State& state) {
  const auto f = static_cast<Family>(state.range(0));
  const auto& y = bench_data(f, 2000);
  for (auto _ : state) benchmark::DoNotOptimize(fit(f, y).loglik);
  state.SetLabel(std::string(family_name(f)));
}
BENCHMARK(BM_Fit)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_GarchFit(benchmark::State& state) {
  const auto& y = bench_data(Family::GaussVol, 2000);
  for (auto _ : state) benchmark::DoNotOptimize(garch_fit(GarchConditional::Gaussian, y).loglik);
}
BENCHMARK(BM_GarchFit)->Unit(benchmark::kMillisecond);

void BM_NormalQuantile(benchmark::State& state) {
  double p = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::std_normal_quantile(p));
    p = p < 0.999 ? p + 1e-3 : 1e-6;
  }
}
BENCHMARK(BM_NormalQuantile);

void BM_F1nuCdf(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::f_1nu_cdf(x, 7.5));
    x = x < 50.0 ? x * 1.1 : 0.01;
  }
}
BENCHMARK(BM_F1nuCdf);

void BM_RegLowerGamma(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::reg_lower_gamma(0.5, x));
    x = x < 50.0 ? x * 1.1 : 0.01;
  }
}
BENCHMARK(BM_RegLowerGamma);

void BM_PredictivePdf(benchmark::State& state) {
  const auto pd = make_predictive(Family::TVol, bench_theta(Family::TVol), 0.4, 5, static_cast<int>(state.range(0)));
  double y = -4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(predictive_pdf(pd, y));
    y = y < 4.0 ? y + 0.01 : -4.0;
  }
}
BENCHMARK(BM_PredictivePdf)->Arg(20)->Arg(50)->Arg(100);

void BM_SimulateAhead(benchmark::State& state) {
  const Theta th = bench_theta(Family::GaussVol);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_ahead(Family::GaussVol, th, 0.4, 5, 100000, 3, 1));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SimulateAhead)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
