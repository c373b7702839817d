#include <benchmark/benchmark.h>

#include <complex>

#include "gammalim/identities.hpp"
#include "gammalim/pole_limits.hpp"

using namespace gammalim;

namespace {

const ComplexScalar kProbe{2.7, 1.3};

void BM_GammaRational(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gamma(kProbe));
}
BENCHMARK(BM_GammaRational);

void BM_GammaReflection(benchmark::State& state) {
    const ComplexScalar z{-4.3, 0.6};
    for (auto _ : state) benchmark::DoNotOptimize(gamma(z));
}
BENCHMARK(BM_GammaReflection);

void BM_LogGamma(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(log_gamma(kProbe));
}
BENCHMARK(BM_LogGamma);

void BM_GammaIntegral(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_integral(kProbe, state.range(0)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GammaIntegral)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oN);

void BM_GammaWeierstrass(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_weierstrass(kProbe, state.range(0)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GammaWeierstrass)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->Complexity(benchmark::oN);

void BM_SinPiReal(benchmark::State& state) {
    double x = 12345.678;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sin_pi(x));
        x += 1e-3;
    }
}
BENCHMARK(BM_SinPiReal);

void BM_RatioStableNearPole(benchmark::State& state) {
    const ComplexScalar z{-3.0 + 1e-9, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(poles::ratio_stable(z, 5));
}
BENCHMARK(BM_RatioStableNearPole);

void BM_LimitExtrapolate(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(poles::limit_extrapolate({3, 2}, 1e-3, 16));
}
BENCHMARK(BM_LimitExtrapolate);

void BM_SineProduct(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(identities::sine_product(state.range(0)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SineProduct)->RangeMultiplier(10)->Range(10, 10000)->Complexity(benchmark::oN);

void BM_GaussResidual(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(identities::gauss_residual(kProbe, state.range(0)));
}
BENCHMARK(BM_GaussResidual)->Arg(2)->Arg(7)->Arg(12);

} // namespace

BENCHMARK_MAIN();
