#include <benchmark/benchmark.h>

#include "edsm/forward.hpp"

namespace {

using namespace edsm;

const Medium kMedium(1.0, 1.0, 8 * kPi);

Scene kite(BoundaryCondition bc) {
    return Scene({{BoundaryCurve(CurveKind::Kite, Vec2::Zero(), 1.0), bc}});
}

void assemble(benchmark::State& state) {
    const Scene scene = kite(state.range(1) ? BoundaryCondition::Neumann : BoundaryCondition::Dirichlet);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_system(scene, kMedium, n).matrix.data());
    state.SetLabel(state.range(1) ? "neumann" : "dirichlet");
}
BENCHMARK(assemble)->ArgsProduct({{128, 256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

void factor(benchmark::State& state) {
    const BoundarySystem system = assemble_system(kite(BoundaryCondition::Dirichlet), kMedium,
                                                  static_cast<int>(state.range(0)));
    for (auto _ : state) {
        FactoredSystem f(system);
        benchmark::DoNotOptimize(f.rcond());
    }
}
BENCHMARK(factor)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

// Full multistatic response: assembly, factorization, 4m solves and far fields.
void synthesize(benchmark::State& state) {
    const Scene scene = kite(BoundaryCondition::Dirichlet);
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_msr(scene, kMedium, m, 256).pp.data());
}
BENCHMARK(synthesize)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
