#include <benchmark/benchmark.h>

#include "dynkit/grid_spectral.hpp"
#include "dynkit/open_systems.hpp"
#include "dynkit/tdse.hpp"

using namespace dynkit;

namespace {

WaveFunction packet(const UniformGrid& g) {
  return make_wavefunction(g, [](double x) { return std::exp(-(x - 1.0) * (x - 1.0) / 2.0) * std::polar(1.0, x); });
}

HamiltonianSpec quartic() {
  return standard_hamiltonian([](double x) { return 0.1 * x * x * x * x - x * x; });
}

void BM_StrangStep(benchmark::State& state) {
  UniformGrid g = make_grid(20.0, state.range(0));
  SplitOperator op(g, quartic());
  CVector psi = packet(g).psi;
  for (auto _ : state) {
    op.step(psi, 0.0, 0.01);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FourthOrderStep(benchmark::State& state) {
  UniformGrid g = make_grid(20.0, state.range(0));
  SplitOperator op(g, quartic());
  CVector psi = packet(g).psi;
  for (auto _ : state) {
    op.step_o4(psi, 0.0, 0.01);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CftForward(benchmark::State& state) {
  UniformGrid g = make_grid(20.0, state.range(0));
  SpectralSignal f{packet(g).psi, g, Space::position};
  for (auto _ : state) benchmark::DoNotOptimize(cft_forward(f).values.data());
}

void BM_Frft(benchmark::State& state) {
  CVector x = packet(make_grid(20.0, state.range(0))).psi;
  for (auto _ : state) benchmark::DoNotOptimize(frft(x, 0.137).data());
}

void BM_VonNeumannStep(benchmark::State& state) {
  UniformGrid g = make_grid(10.0, state.range(0));
  HamiltonianSpec s = quartic();
  CMatrix rho = pure_density(packet(g));
  for (auto _ : state) {
    rho = vonneumann_step(rho, g, 0.0, 0.01, s);
    benchmark::DoNotOptimize(rho.data());
  }
}

}  // namespace

BENCHMARK(BM_StrangStep)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(BM_FourthOrderStep)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(BM_CftForward)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(BM_Frft)->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(BM_VonNeumannStep)->RangeMultiplier(2)->Range(32, 256);
BENCHMARK_MAIN();
