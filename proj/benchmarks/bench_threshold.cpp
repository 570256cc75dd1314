#include <random>

#include <benchmark/benchmark.h>

#include <ssnreg/ssnreg.hpp>

namespace {

ssnreg::Vector random_input(ssnreg::Index p) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 3.0);
  ssnreg::Vector t(p);
  for (auto& v : t) v = normal(rng);
  return t;
}

void BM_ThresholdVector(benchmark::State& state, ssnreg::Penalty family) {
  const ssnreg::Vector t = random_input(state.range(0));
  const ssnreg::PenaltySpec spec(family, 1.0, ssnreg::PenaltySpec::default_gamma(family));
  for (auto _ : state) benchmark::DoNotOptimize(ssnreg::threshold_vector(t, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_NewtonDerivative(benchmark::State& state, ssnreg::Penalty family) {
  const ssnreg::Vector t = random_input(state.range(0));
  const ssnreg::PenaltySpec spec(family, 1.0, ssnreg::PenaltySpec::default_gamma(family));
  for (auto _ : state) {
    double acc = 0.0;
    for (double v : t) acc += ssnreg::newton_derivative(v, spec);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_ThresholdVector, mcp, ssnreg::Penalty::Mcp)->Arg(1000)->Arg(100000);
BENCHMARK_CAPTURE(BM_ThresholdVector, scad, ssnreg::Penalty::Scad)->Arg(1000)->Arg(100000);
BENCHMARK_CAPTURE(BM_NewtonDerivative, mcp, ssnreg::Penalty::Mcp)->Arg(100000);
BENCHMARK_CAPTURE(BM_NewtonDerivative, scad, ssnreg::Penalty::Scad)->Arg(100000);
