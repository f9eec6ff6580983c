// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "omx/bitcost.hpp"

static void BM_WaveformOverlap(benchmark::State& state) {
  const double k = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(omx::bitcost::waveform_overlap(2.0, k));
}
BENCHMARK(BM_WaveformOverlap)->DenseRange(-2, 2);

static void BM_RequiredPhonons(benchmark::State& state) {
  const double k = std::pow(10.0, static_cast<double>(state.range(0)));
  const omx::bitcost::EncodingProblem prob{1.0, 5e-5, k, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(omx::bitcost::required_phonons(prob));
}
BENCHMARK(BM_RequiredPhonons)->DenseRange(-2, 2)->Unit(benchmark::kMicrosecond);
