#include <benchmark/benchmark.h>

#include <random>

#include "fftmech/projection.hpp"
#include "fftmech/tensor_ops.hpp"

using namespace fftmech;

namespace {

Tensor2Field random_field(const GridShape& shape, int tdim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Tensor2Field f(shape, tdim);
  for (double& v : f.data()) v = dist(rng);
  return f;
}

void BM_apply_projection_3d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridShape shape = grid_3d(n, n, n);
  const ProjectionOperator G = build_projection(shape, 3);
  const Tensor2Field A = random_field(shape, 3, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_projection(G, A));
  }
  state.SetItemsProcessed(state.iterations() * shape.node_count());
}

void BM_apply_projected_tangent_3d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridShape shape = grid_3d(n, n, n);
  const ProjectionOperator G = build_projection(shape, 3);
  Tensor4Field K(shape, 3);
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : K.data()) v = dist(rng);
  const Tensor2Field dF = random_field(shape, 3, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_projected_tangent(G, K, dF));
  }
  state.SetItemsProcessed(state.iterations() * shape.node_count());
}

}  // namespace

BENCHMARK(BM_apply_projection_3d)->Arg(11)->Arg(16)->Arg(32);
BENCHMARK(BM_apply_projected_tangent_3d)->Arg(11)->Arg(16)->Arg(32);
