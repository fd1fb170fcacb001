#include <benchmark/benchmark.h>

#include "tmc/geometry.hpp"
#include "tmc/operators.hpp"
#include "tmc/series.hpp"
#include "tmc/variational.hpp"

namespace {

using namespace tmc;

void BM_SeriesMultiply(benchmark::State& state) {
  const Series a = sin(Series::variable(0.3, 0)) + Series::variable(0.7, 1);
  const Series b = cos(Series::variable(0.3, 0) * Series::variable(0.7, 1));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMultiply);

void BM_PointwiseGeometry(benchmark::State& state) {
  const Immersion imm = catalog("veronese");
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pointwise_geometry(imm, {0.7, 1.3}, order));
}
BENCHMARK(BM_PointwiseGeometry)->Arg(2)->Arg(4);

void BM_TotalMeanCurvature(benchmark::State& state) {
  const Immersion imm = catalog("graph_torus");
  const int n = static_cast<int>(state.range(0));
  const QuadratureGrid grid = build_grid(imm.domain(), std::vector<int>{n, n});
  for (auto _ : state) benchmark::DoNotOptimize(total_mean_curvature(imm, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_TotalMeanCurvature)->Arg(32)->Arg(128);

void BM_MatrixSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(matrix_lemma_sweep(1000, 1));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_MatrixSweep);

}  // namespace
BENCHMARK_MAIN();
