#include <benchmark/benchmark.h>

#include "numrad/numrange.hpp"
#include "numrad/quadrature.hpp"
#include "numrad/registry.hpp"
#include "numrad/sampler.hpp"
#include "numrad/scalardist.hpp"

using namespace numrad;

namespace {

ComplexMatrix ginibre(int n, std::uint64_t seed) { return sample({Family{BaseFamily::ginibre}, n, seed}); }

void BM_MaxEigenvalue(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ComplexMatrix g = ginibre(n, 1);
    const ComplexMatrix h = 0.5 * (g + g.adjoint());
    for (auto _ : state) benchmark::DoNotOptimize(max_eigenvalue(h));
}
BENCHMARK(BM_MaxEigenvalue)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_NumericalRadiusCatalogSweep(benchmark::State& state) {
    const ComplexMatrix t = ginibre(static_cast<int>(state.range(0)), 2);
    const SweepOptions opts = EvalSettings{}.sweep;
    for (auto _ : state) benchmark::DoNotOptimize(numradius(t, opts));
}
BENCHMARK(BM_NumericalRadiusCatalogSweep)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_NumericalRadiusDefault(benchmark::State& state) {
    const ComplexMatrix t = ginibre(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(numradius(t));
}
BENCHMARK(BM_NumericalRadiusDefault)->Arg(4)->Arg(8);

void BM_ScalarDistance(benchmark::State& state) {
    const ComplexMatrix t = ginibre(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(min_scalar_distance(t).distance);
}
BENCHMARK(BM_ScalarDistance)->Arg(4)->Arg(8);

void BM_SegmentIntegral(benchmark::State& state) {
    const ComplexMatrix t = ginibre(static_cast<int>(state.range(0)), 4);
    SegmentIntegralOptions opts;
    opts.sweep = EvalSettings{}.sweep;
    for (auto _ : state) benchmark::DoNotOptimize(int_numrad_segment(t, opts).value);
}
BENCHMARK(BM_SegmentIntegral)->Arg(4)->Arg(8);

void BM_Entry(benchmark::State& state, const char* id) {
    const int n = static_cast<int>(state.range(0));
    const std::vector<ComplexMatrix> ops{ginibre(n, 5), ginibre(n, 6)};
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(id, ops));
}
BENCHMARK_CAPTURE(BM_Entry, E23, "E23")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Entry, E30, "E30")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
