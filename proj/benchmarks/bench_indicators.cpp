#include <map>

#include <benchmark/benchmark.h>

#include "edsm/aperture.hpp"
#include "edsm/forward.hpp"
#include "edsm/indicators.hpp"

namespace {

using namespace edsm;

const MSRMatrix& data(int m) {
    static std::map<int, MSRMatrix> cache;
    auto it = cache.find(m);
    if (it == cache.end()) {
        const Scene scene({{BoundaryCurve(CurveKind::Kite, Vec2::Zero(), 1.0), BoundaryCondition::Dirichlet}});
        it = cache.emplace(m, synthesize_msr(scene, Medium(1.0, 1.0, 8 * kPi), m, 256)).first;
    }
    return it->second;
}

void indicator_grid(benchmark::State& state) {
    const MSRMatrix& msr = data(static_cast<int>(state.range(0)));
    const int points = static_cast<int>(state.range(1));
    const SamplingGrid grid(-6, 6, -6, 6, points, points);
    for (auto _ : state) benchmark::DoNotOptimize(indicator(msr, grid, Vec2(1, 0), IndicatorKind::FF).values.data());
    state.SetItemsProcessed(state.iterations() * points * points);
}
BENCHMARK(indicator_grid)->ArgsProduct({{64, 128}, {81, 161}})->Unit(benchmark::kMillisecond);

void retrieve_quarter(benchmark::State& state) {
    const MSRMatrix& msr = data(64);
    ApertureMask mask = ApertureMask::full(64);
    mask.observed = indices_in_arcs(64, {{0, kPi / 2}});
    const MaskedMSR masked = reciprocity_fill(apply_mask(msr, mask));
    const RetrievalParams params{5.0, 256, 1e-2};
    for (auto _ : state) benchmark::DoNotOptimize(tikhonov_retrieve(masked, params).ss.data());
}
BENCHMARK(retrieve_quarter)->Unit(benchmark::kMillisecond);

}  // namespace
