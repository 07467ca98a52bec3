#include <benchmark/benchmark.h>

#include <random>

#include "prbtd/baselines.hpp"
#include "prbtd/experiment.hpp"
#include "prbtd/features.hpp"
#include "prbtd/simulator.hpp"
#include "prbtd/td_engine.hpp"

namespace {

prbtd::World default_world() {
    prbtd::ScenarioConfig cfg;
    cfg.seed = 17;
    return prbtd::simulate(cfg);
}

void BM_implication(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    std::vector<prbtd::DataFeature> features(1024);
    for (auto& f : features) f = {uni(rng), uni(rng)};
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& f1 = features[i % features.size()];
        const auto& f2 = features[(i * 7 + 13) % features.size()];
        benchmark::DoNotOptimize(prbtd::implication(f1, f2));
        ++i;
    }
}
BENCHMARK(BM_implication);

void BM_td_estimate(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(90.0, 110.0);
    std::vector<double> values(static_cast<std::size_t>(state.range(0)));
    for (auto& v : values) v = uni(rng);
    values.back() = 150.0;
    const std::vector<double> weights(values.size(), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(prbtd::td_estimate(values, weights, 0.001, 100));
    }
}
BENCHMARK(BM_td_estimate)->Arg(2)->Arg(4)->Arg(8);

// Whole-task scoring at the default scale; the per-slot mean is the number
// the real-time argument rests on.
void BM_engine_full_task(benchmark::State& state) {
    const prbtd::World world = default_world();
    const prbtd::ExperimentConfig cfg;
    std::vector<bool> actual(world.profiles.size());
    for (std::size_t i = 0; i < actual.size(); ++i) actual[i] = world.profiles[i].malicious;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            prbtd::run_method(world, prbtd::Method::prbtd, cfg, actual));
    }
    state.counters["slots"] = static_cast<double>(world.batches.size());
}
BENCHMARK(BM_engine_full_task)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
