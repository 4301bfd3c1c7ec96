#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "tempscale/tempscale.hpp"

using namespace tempscale;

namespace {

std::vector<double> noise(std::size_t n) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = g(rng);
    return x;
}

void BM_SmoothLogLadder(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)));
    const auto ladder = build_log_ladder_range(std::sqrt(2.0), 1.0, 1024.0, 8);
    for (auto _ : state) benchmark::DoNotOptimize(smooth(x, 1.0, ladder));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SmoothLogLadder)->Arg(1 << 12)->Arg(1 << 16);

void BM_SmoothGaussian(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)));
    const auto tau = build_log_ladder_range(std::sqrt(2.0), 1.0, 1024.0, 0).tau;
    for (auto _ : state) benchmark::DoNotOptimize(smooth_gaussian(x, 1.0, tau));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SmoothGaussian)->Arg(1 << 12);

void BM_StreamStep(benchmark::State& state) {
    const auto ladder = build_log_ladder_range(std::sqrt(2.0), 1.0, 1024.0, 8);
    IntegratorState st(ladder, 1.0);
    std::vector<double> out(ladder.size());
    double v = 0.0;
    for (auto _ : state) {
        stream_step_into(st, v, out);
        v = 1.0 - v;
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StreamStep);

void BM_Pipeline(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)));
    PipelineConfig cfg;
    cfg.polarity = PolarityFilter::Both;
    for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(x, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Pipeline)->Arg(1 << 12)->Arg(1 << 15);

void BM_StreamDetector(benchmark::State& state) {
    const auto x = noise(1 << 14);
    PipelineConfig cfg;
    cfg.polarity = PolarityFilter::Both;
    for (auto _ : state) {
        StreamDetector det(cfg);
        for (double v : x) benchmark::DoNotOptimize(det.push(v));
        benchmark::DoNotOptimize(det.finish());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x.size()));
}
BENCHMARK(BM_StreamDetector);

void BM_SmoothVolume(benchmark::State& state) {
    const auto v = blink_generator(41, 41, 60, 1.0, 1.0, 4.0, 8, 1.0);
    const std::vector<double> s_list{1.0, 2.0, 4.0, 8.0};
    const auto ladder = build_uniform_ladder(1.0, 16);
    for (auto _ : state) benchmark::DoNotOptimize(smooth_volume(v, s_list, ladder));
}
BENCHMARK(BM_SmoothVolume)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
