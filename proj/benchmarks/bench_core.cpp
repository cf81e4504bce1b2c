// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "insector/insector.hpp"

namespace {

using namespace insector;

ComplexVector random_vector(Rng& rng, int n) {
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) v[i] = complex_normal(rng, 1.0);
    return v;
}

void BM_Dft(benchmark::State& state) {
    Rng rng(1);
    const ComplexVector v = random_vector(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dft(v));
}
BENCHMARK(BM_Dft)->Arg(64)->Arg(256)->Arg(1024)->Arg(96);

void BM_SelectBaseBeam(benchmark::State& state) {
    const Sector sector(0, 63, 256);
    for (auto _ : state) {
        Rng rng(2);
        benchmark::DoNotOptimize(select_base_beam(sector, static_cast<int>(state.range(0)), rng));
    }
}
BENCHMARK(BM_SelectBaseBeam)->Arg(100)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_Coherence(benchmark::State& state) {
    Rng rng(3);
    const ShiftSet shifts = rcs_shifts(256, 25, rng);
    const Sector sector(0, 63, 256);
    for (auto _ : state) benchmark::DoNotOptimize(coherence(shifts, sector));
}
BENCHMARK(BM_Coherence);

void BM_GridOmp(benchmark::State& state) {
    Rng rng(4);
    const int m = static_cast<int>(state.range(0));
    const Sector sector(64, 127, 256);
    const BaseBeam base = select_base_beam(sector, 10, rng);
    const ShiftSet shifts = pcs_shifts(256, 64, m, rng);
    const SensingMatrix a = build_sensing_matrix(shifts, sector);
    ChannelScenarioConfig cfg;
    cfg.band = sector;
    const ComplexVector h = synthesize_channel(sample_scenario(cfg, rng), 256);
    const ComplexVector y = simulate_measurements(h, base, shifts, 0.1, rng);
    for (auto _ : state) benchmark::DoNotOptimize(omp(y, a.a_l, 4, 0.0));
}
BENCHMARK(BM_GridOmp)->Arg(10)->Arg(40);

void BM_OversampledOmp(benchmark::State& state) {
    Rng rng(5);
    const int m = static_cast<int>(state.range(0));
    const Sector sector(64, 127, 256);
    const BaseBeam base = select_base_beam(sector, 10, rng);
    const auto beams = beam_ensemble(base, pcs_shifts(256, 64, m, rng));
    ChannelScenarioConfig cfg;
    cfg.band = sector;
    const ComplexVector h = synthesize_channel(sample_scenario(cfg, rng), 256);
    const ComplexVector y = measure(h, beams);
    for (auto _ : state) benchmark::DoNotOptimize(omp_oversampled(y, beams, 4, sector, 4, 0.0));
}
BENCHMARK(BM_OversampledOmp)->Arg(10)->Arg(40);

void BM_GreedyBeams(benchmark::State& state) {
    Rng rng(6);
    const Sector sector(64, 127, 256);
    for (auto _ : state)
        benchmark::DoNotOptimize(greedy_benchmark_beams(sector, static_cast<int>(state.range(0)), 30, rng));
}
BENCHMARK(BM_GreedyBeams)->Arg(10)->Arg(60);

void BM_ExperimentTrial(benchmark::State& state) {
    ExperimentConfig c;
    c.trials = 20;
    c.m = 20;
    c.omp.oversampling = 4;
    c.scheme = static_cast<Scheme>(state.range(0));
    const SectorDesign design = design_sectors(c);
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c, design));
    state.SetItemsProcessed(state.iterations() * c.trials);
}
BENCHMARK(BM_ExperimentTrial)->Arg(0)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
