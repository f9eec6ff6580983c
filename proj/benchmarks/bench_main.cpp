// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

// The distribution's libbenchmark_main.a carries LTO bytecode from another
// compiler release, so the entry point lives here.
BENCHMARK_MAIN();
