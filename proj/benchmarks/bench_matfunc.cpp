#include <random>

#include <benchmark/benchmark.h>

#include "dynkit/matfunc.hpp"

using namespace dynkit;

namespace {

CMatrix random_hermitian(int d, double norm, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = cplx(nd(rng), nd(rng));
  CMatrix h = 0.5 * (a + a.adjoint());
  return h * (norm / norm1(h));
}

// args: dimension, 1-norm
void BM_ExpmPade(benchmark::State& state) {
  CMatrix a = random_hermitian(state.range(0), state.range(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(expm_pade(a).result.data());
  state.counters["squarings"] = expm_pade(a).squarings;
}

void BM_ExpmTaylor(benchmark::State& state) {
  CMatrix a = random_hermitian(state.range(0), state.range(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(expm_taylor(a, 1e-14).result.data());
  state.counters["terms"] = expm_taylor(a, 1e-14).terms;
}

void BM_ExpmEigen(benchmark::State& state) {
  CMatrix a = random_hermitian(state.range(0), state.range(1), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(func_of_hermitian(a, [](double l) { return cplx(std::exp(l)); }).data());
}

void expm_args(benchmark::internal::Benchmark* b) {
  for (int d : {16, 64})
    for (int n : {1, 16, 64}) b->Args({d, n});
}

}  // namespace

BENCHMARK(BM_ExpmPade)->Apply(expm_args);
BENCHMARK(BM_ExpmTaylor)->Apply(expm_args);
BENCHMARK(BM_ExpmEigen)->Apply(expm_args);
