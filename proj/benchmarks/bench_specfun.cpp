#include <benchmark/benchmark.h>

#include "confdist/inference.hpp"
#include "confdist/specfun.hpp"

namespace {

using namespace confdist;

// Cost grows with sqrt of both Poisson means; range over the noncentrality.
void BM_NoncentralChisq2(benchmark::State& state) {
    const double nu = static_cast<double>(state.range(0));
    const double x = nu + 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::noncentral_chisq2_cdf(x, nu));
    }
}
BENCHMARK(BM_NoncentralChisq2)->RangeMultiplier(10)->Range(1, 1000000);

void BM_BesselI0Scaled(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_i0_scaled(x));
    }
}
BENCHMARK(BM_BesselI0Scaled)->Arg(1)->Arg(25)->Arg(100);

void BM_LevelInterval(benchmark::State& state) {
    const auto obs = inference::Observation::from_norm(5.0, 2.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(inference::level_interval(obs, inference::Method::bayes, 0.9));
    }
}
BENCHMARK(BM_LevelInterval);

}  // namespace
