#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "georeg/georeg.h"

namespace georeg {
namespace {

struct Problem {
  Vector y;
  std::vector<Vector> xs;
};

Problem MakeProblem(std::size_t n, std::size_t m) {
  std::mt19937_64 rng(n * 131 + m);
  std::normal_distribution<double> normal(0.0, 1.0);
  Problem p;
  p.y = Vector(n);
  for (std::size_t j = 0; j < m; ++j) {
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = normal(rng);
    p.xs.push_back(std::move(x));
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = normal(rng);
    for (std::size_t j = 0; j < m; ++j) v += 0.3 * static_cast<double>(j + 1) * p.xs[j][i];
    p.y[i] = v;
  }
  return p;
}

void BM_FitOls(benchmark::State& state) {
  const Problem p = MakeProblem(static_cast<std::size_t>(state.range(0)),
                                static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(FitOls(p.y, p.xs));
}
BENCHMARK(BM_FitOls)->Args({100, 4})->Args({1000, 8})->Args({10000, 8});

void BM_SummarizeThenFitGeometric(benchmark::State& state) {
  const Problem p = MakeProblem(static_cast<std::size_t>(state.range(0)),
                                static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(FitGeometric(Summarize(p.y, p.xs)));
}
BENCHMARK(BM_SummarizeThenFitGeometric)->Args({100, 4})->Args({1000, 8})->Args({10000, 8});

// Once the summary exists, refitting costs nothing that depends on n.
void BM_FitGeometricFromSummary(benchmark::State& state) {
  const Problem p = MakeProblem(1000, static_cast<std::size_t>(state.range(0)));
  const GeometricSummary summary = Summarize(p.y, p.xs);
  for (auto _ : state) benchmark::DoNotOptimize(FitGeometric(summary));
}
BENCHMARK(BM_FitGeometricFromSummary)->Arg(2)->Arg(8)->Arg(32);

void BM_SymmetricEigen(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const Problem p = MakeProblem(4 * m + 10, m);
  const Matrix theta = Summarize(p.y, p.xs).theta();
  for (auto _ : state) benchmark::DoNotOptimize(SymmetricEigen(theta));
}
BENCHMARK(BM_SymmetricEigen)->Arg(4)->Arg(16)->Arg(64);

void BM_AnalyzeSpectrum(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const Problem p = MakeProblem(4 * m + 10, m);
  const GeometricSummary summary = Summarize(p.y, p.xs);
  for (auto _ : state) benchmark::DoNotOptimize(AnalyzeSpectrum(summary));
}
BENCHMARK(BM_AnalyzeSpectrum)->Arg(4)->Arg(16);

// Every nonempty subset of m regressors.
void BM_AllSubsets(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const Problem p = MakeProblem(200, m);
  const GeometricSummary summary = Summarize(p.y, p.xs);
  for (auto _ : state) {
    std::vector<std::size_t> subset;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      subset.clear();
      for (std::size_t j = 0; j < m; ++j) {
        if (mask & (1u << j)) subset.push_back(j);
      }
      benchmark::DoNotOptimize(RSquaredSubset(summary, subset));
    }
  }
  state.SetItemsProcessed(state.iterations() * ((1 << m) - 1));
}
BENCHMARK(BM_AllSubsets)->Arg(4)->Arg(10);

void BM_FSurvival(benchmark::State& state) {
  double f = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(FSurvival(f, FParams{4.0, 48.0}));
    f = f < 10.0 ? f * 1.01 : 0.5;
  }
}
BENCHMARK(BM_FSurvival);

}  // namespace
}  // namespace georeg

BENCHMARK_MAIN();
