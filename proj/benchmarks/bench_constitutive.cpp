#include <benchmark/benchmark.h>

#include <random>

#include "fftmech/hyperelastic.hpp"
#include "fftmech/simo.hpp"
#include "fftmech/tensor_ops.hpp"

using namespace fftmech;

namespace {

Tensor2Field near_identity_field(const GridShape& shape, int tdim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-0.05, 0.05);
  Tensor2Field f = identity2(shape, tdim);
  for (double& v : f.data()) v += dist(rng);
  return f;
}

void BM_hyperelastic_evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridShape shape = grid_3d(n, n, n);
  const Tensor2Field F = near_identity_field(shape, 3, 7);
  Tensor2Field P;
  Tensor4Field K;
  const ElasticParams params{1.0, 0.3};
  for (auto _ : state) {
    hyperelastic_evaluate(F, params, P, K);
    benchmark::DoNotOptimize(P);
  }
  state.SetItemsProcessed(state.iterations() * shape.node_count());
}

void BM_simo_evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridShape shape = grid_2d(n, n);
  SimoPlasticityModel model(shape, PlasticParams{{1.0, 0.3}, 0.003, 0.01});
  const Tensor2Field F = near_identity_field(shape, 3, 11);
  Tensor2Field P;
  Tensor4Field K;
  for (auto _ : state) {
    model.evaluate(F, P, K);
    benchmark::DoNotOptimize(P);
  }
  state.SetItemsProcessed(state.iterations() * shape.node_count());
}

}  // namespace

BENCHMARK(BM_hyperelastic_evaluate)->Arg(11)->Arg(16)->Arg(32);
BENCHMARK(BM_simo_evaluate)->Arg(45)->Arg(64);
