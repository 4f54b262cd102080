#include <benchmark/benchmark.h>

#include "edsm/elastic.hpp"
#include "edsm/specfun.hpp"

namespace {

using namespace edsm;

void hankel_order1(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hankel1(1, x));
        x = x < 50.0 ? x + 0.37 : 0.1;
    }
}
BENCHMARK(hankel_order1);

void greens_tensor_eval(benchmark::State& state) {
    const Medium medium(1.0, 1.0, 8 * kPi);
    const Vec2 y(0.0, 0.0);
    Vec2 x(0.3, -0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(greens_tensor(x, y, medium));
        x.x() += 1e-3;
    }
}
BENCHMARK(greens_tensor_eval);

void traction_kernel_eval(benchmark::State& state) {
    const Medium medium(1.0, 1.0, 8 * kPi);
    const Vec2 y(0.0, 0.0), normal(0.6, 0.8);
    Vec2 x(0.3, -0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(greens_traction_kernel(x, y, normal, medium));
        x.y() += 1e-3;
    }
}
BENCHMARK(traction_kernel_eval);

}  // namespace
