#include <benchmark/benchmark.h>

#include <string>

#include "fractile/compat.hpp"
#include "fractile/grid_volume.hpp"
#include "fractile/io.hpp"
#include "fractile/kernel.hpp"
#include "fractile/tube.hpp"

using namespace fractile;

namespace {

IfsSystem load(const char* name) { return load_spec(std::string(FRACTILE_DATA_DIR) + "/" + name + ".json").system; }

void BM_OverlayGasketCover(benchmark::State& state) {
    const IfsSystem g = load("gasket");
    const Region C = attractor_hull(g).hull;
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Region r = C;
        for (int k = 0; k < depth; ++k) r = apply_maps(g, r);
        benchmark::DoNotOptimize(r.measure());
    }
}
BENCHMARK(BM_OverlayGasketCover)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_EnvelopeKoch(benchmark::State& state) {
    const IfsSystem k = load("koch");
    for (auto _ : state) benchmark::DoNotOptimize(envelope(k, static_cast<int>(state.range(0))).region.measure());
}
BENCHMARK(BM_EnvelopeKoch)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_AttractorDistance(benchmark::State& state) {
    const AttractorDistance d(load("gasket"));
    const double precision = std::pow(10.0, -static_cast<double>(state.range(0)));
    double x = 0.1;
    for (auto _ : state) {
        x = x < 0.9 ? x + 0.013 : 0.1;
        benchmark::DoNotOptimize(d.bounds({x, 0.37}, precision));
    }
}
BENCHMARK(BM_AttractorDistance)->Arg(3)->Arg(6)->Arg(9)->Arg(12);

void BM_ScalingSum(benchmark::State& state) {
    const IfsSystem g = load(state.range(0) ? "carpet" : "gasket");
    const Tiling t(g, attractor_hull(g).hull);
    const ScalingSum s(t);
    for (auto _ : state) benchmark::DoNotOptimize(s(1e-4));
}
BENCHMARK(BM_ScalingSum)->Arg(0)->Arg(1);

void BM_GridAttractorTube(benchmark::State& state) {
    const IfsSystem g = load("gasket");
    const AttractorField F(g);
    const double eps = 0.1 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(grid_tube_volume(TubeQuery{&F, eps}, eps / 20).value);
}
BENCHMARK(BM_GridAttractorTube)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ResidueFormula(benchmark::State& state) {
    const IfsSystem g = load("gasket");
    const Tiling t(g, attractor_hull(g).hull);
    const double eps = t.max_inradius() / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(residue_tube_formula(t, eps).value);
}
BENCHMARK(BM_ResidueFormula)->Arg(1)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
