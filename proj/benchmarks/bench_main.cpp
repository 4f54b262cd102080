#include <benchmark/benchmark.h>

// The distribution's benchmark_main archive carries LTO bytecode from another compiler release.
BENCHMARK_MAIN();
