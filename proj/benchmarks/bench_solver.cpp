#include <benchmark/benchmark.h>

#include <cmath>

#include "fftmech/hyperelastic.hpp"
#include "fftmech/microstructure.hpp"
#include "fftmech/solver.hpp"
#include "fftmech/tensor_ops.hpp"

using namespace fftmech;

namespace {

void BM_solve_increment_cube(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridShape shape = grid_3d(n, n, n);
  const PhaseGrid pg = make_cubic_inclusion(shape, std::pow(3.0 / 11.0, 3));
  const MaterialFields mf =
      bind_parameters(pg, std::vector<ElasticParams>{{1.0, 0.3}, {10.0, 0.3}});
  const ProjectionOperator G = build_projection(shape, 3);

  Tensor2 fbar = Tensor2::identity(3);
  fbar(0, 1) = 0.1;

  for (auto _ : state) {
    HyperelasticModel model(shape, 3, mf.lambda, mf.mu);
    Tensor2Field F = identity2(shape, 3);
    const SolveReport report = solve_increment(F, model, G, {fbar, "1"}, SolverParams{});
    benchmark::DoNotOptimize(report.passes.size());
  }
  state.SetItemsProcessed(state.iterations() * shape.node_count());
}

}  // namespace

BENCHMARK(BM_solve_increment_cube)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
