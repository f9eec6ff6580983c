// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <vector>

#include "omx/aom.hpp"
#include "omx/bessel.hpp"
#include "omx/constants.hpp"

static void BM_BesselOrders(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  const int nmax = omx::special::sideband_cutoff(x);
  for (auto _ : state) benchmark::DoNotOptimize(omx::special::bessel_j_orders(nmax, x));
}
BENCHMARK(BM_BesselOrders)->Arg(5)->Arg(35)->Arg(100);

static void BM_ReflectionSpectrum(benchmark::State& state) {
  const omx::model::OpticalCavity c{1.2e15, omx::angular(1210e6), omx::angular(800e6)};
  std::vector<double> grid(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = omx::angular(-20e9 + 40e9 * static_cast<double>(i) / static_cast<double>(grid.size()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(omx::aom::reflection_spectrum(c, 4.812, omx::angular(1.85e9), grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReflectionSpectrum)->Arg(1601);
