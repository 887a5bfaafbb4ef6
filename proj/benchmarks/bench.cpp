#include <benchmark/benchmark.h>

#include "mgfield/markov.hpp"
#include "mgfield/metrics.hpp"
#include "mgfield/models.hpp"

using namespace mgfield;

namespace {

MetricGraph lattice_graph(int side) { return generate_lattice(side, side, 1.0); }

void BM_geodesic_matrix(benchmark::State& state) {
  MetricGraph g = lattice_graph(static_cast<int>(state.range(0)));
  PointSet pts = PointSet::vertices(g);
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_matrix(g, pts));
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_geodesic_matrix)->Arg(4)->Arg(8)->Arg(16)->Complexity();

void BM_resistance_matrix(benchmark::State& state) {
  MetricGraph g = lattice_graph(static_cast<int>(state.range(0)));
  PointSet pts = PointSet::vertices(g);
  for (auto _ : state) benchmark::DoNotOptimize(resistance_matrix(g, pts));
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_resistance_matrix)->Arg(4)->Arg(8)->Arg(16)->Complexity();

void BM_invert_spd(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  MetricGraph g = lattice_graph(side);
  LabeledMatrix d = geodesic_matrix(g, PointSet::vertices(g));
  LabeledMatrix cov = exp_covariance(d, {1.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(invert_spd(cov));
  state.SetComplexityN(side * side);
}
BENCHMARK(BM_invert_spd)->Arg(4)->Arg(8)->Arg(16)->Complexity();

void BM_wm_precision(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  MetricGraph g = lattice_graph(side);
  for (auto _ : state)
    benchmark::DoNotOptimize(wm_alpha1_precision(g, {1.0, 1.0, 1.0}));
}
BENCHMARK(BM_wm_precision)->Arg(8)->Arg(16);

void BM_faithfulness_tadpole(benchmark::State& state) {
  MetricGraph t = generate_tadpole();
  RefinedGraph rg = refine(t, PointSet());
  LabeledMatrix d = geodesic_matrix(t, rg.nodes());
  LabeledMatrix cov = exp_covariance(d, {1.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(verify_faithfulness(cov, rg, 1e-7));
}
BENCHMARK(BM_faithfulness_tadpole);

void BM_sample_gaussian(benchmark::State& state) {
  MetricGraph g = lattice_graph(8);
  LabeledMatrix d = geodesic_matrix(g, PointSet::vertices(g));
  LabeledMatrix cov = exp_covariance(d, {1.0, 1.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_gaussian(cov, 7, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_sample_gaussian)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
