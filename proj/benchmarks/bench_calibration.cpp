#include <benchmark/benchmark.h>

#include "confdist/calibration.hpp"

namespace {

using namespace confdist;

void BM_ExactRow(benchmark::State& state) {
    const double sigma = static_cast<double>(state.range(0)) / 4.0;
    const calibration::Scenario scenario(inference::Distance(1.99), sigma, inference::CollisionRadius(2.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(calibration::exact_row(scenario));
    }
}
BENCHMARK(BM_ExactRow)->Arg(1)->Arg(4)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SweepRow(benchmark::State& state) {
    calibration::SweepConfig config;
    config.sigma_grid = {2.0};
    config.n_reps = static_cast<std::uint64_t>(state.range(0));
    config.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            calibration::run_sweep({inference::Distance(1.99), inference::CollisionRadius(2.0)}, config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SweepRow)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
