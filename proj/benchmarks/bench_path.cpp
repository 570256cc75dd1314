// Whole-path timings on simulated data: SSN against CD, and SSN as p grows
// with n = p / 5.

#include <benchmark/benchmark.h>

#include <ssnreg/ssnreg.hpp>

namespace {

ssnreg::Problem make_problem(ssnreg::Index n, ssnreg::Index p, ssnreg::Index sparsity) {
  const ssnreg::Dataset data = ssnreg::simulate({n, p, 0.3, 0.1, sparsity, 2024});
  return ssnreg::Problem(data.x, data.y);
}

void BM_Path(benchmark::State& state, ssnreg::SolverKind solver, ssnreg::Penalty family) {
  const ssnreg::Problem prob = make_problem(200, 1000, 14);
  const double gamma = ssnreg::PenaltySpec::default_gamma(family);
  std::size_t points = 0;
  for (auto _ : state) {
    const ssnreg::PathResult path = ssnreg::solve_path(prob, family, gamma, solver, {});
    points = path.size();
    benchmark::DoNotOptimize(path.points.data());
  }
  state.counters["points"] = static_cast<double>(points);
}

void BM_SsnPathScaling(benchmark::State& state) {
  const ssnreg::Index p = state.range(0);
  const ssnreg::Problem prob = make_problem(p / 5, p, 10);
  std::size_t points = 0;
  for (auto _ : state) {
    const ssnreg::PathResult path = ssnreg::solve_path(prob, ssnreg::Penalty::Mcp, 2.7, ssnreg::SolverKind::Ssn, {});
    points = path.size();
    benchmark::DoNotOptimize(path.points.data());
  }
  state.counters["points"] = static_cast<double>(points);
  state.counters["per_lambda"] = benchmark::Counter(static_cast<double>(points) * static_cast<double>(state.iterations()),
                                                    benchmark::Counter::kIsRate | benchmark::Counter::kInvert);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Path, ssn_mcp, ssnreg::SolverKind::Ssn, ssnreg::Penalty::Mcp)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Path, ssn_scad, ssnreg::SolverKind::Ssn, ssnreg::Penalty::Scad)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Path, cd_mcp, ssnreg::SolverKind::Cd, ssnreg::Penalty::Mcp)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Path, cd_scad, ssnreg::SolverKind::Cd, ssnreg::Penalty::Scad)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SsnPathScaling)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
