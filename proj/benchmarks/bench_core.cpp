#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "psz/box_spectrum.hpp"
#include "psz/engine_cycle.hpp"
#include "psz/general_demon.hpp"
#include "psz/quantum_weight.hpp"
#include "psz/thermal_gas.hpp"
#include "psz/thermo_ledger.hpp"

namespace {

void BM_Eigencurve(benchmark::State& state) {
    std::vector<double> Vs;
    for (int i = 0; i < state.range(0); ++i) Vs.push_back(1e-2 * std::pow(1e6, double(i) / (state.range(0) - 1)));
    for (auto _ : state) benchmark::DoNotOptimize(psz::eigencurve(psz::Symmetry::even, 3, Vs, 0.01));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Eigencurve)->Arg(50)->Arg(400);

void BM_AiryValue(benchmark::State& state) {
    double z = -19.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(psz::airy_value_and_derivative(z));
        z += 0.37;
        if (z > 19.9) z = -19.9;
    }
}
BENCHMARK(BM_AiryValue);

void BM_ShelfSum(benchmark::State& state) {
    psz::WeightParams w;
    w.T_W = double(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(psz::p_above_shelf_sum(w.T_W, w));
}
BENCHMARK(BM_ShelfSum)->Arg(10)->Arg(100);

void BM_EngineMonteCarlo(benchmark::State& state) {
    const auto e = psz::EngineParams::from_p1(0.3, {0.5, 0.25, 0.25});
    for (auto _ : state) benchmark::DoNotOptimize(psz::mc_engine(e, state.range(0), 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EngineMonteCarlo)->Arg(100000);

void BM_DemonMonteCarlo(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(psz::mc_demon({0.3, 0.6}, state.range(0), 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DemonMonteCarlo)->Arg(100000);

void BM_ExpansionSampler(benchmark::State& state) {
    const psz::ExpansionWorkSampler sampler(int(state.range(0)), 1e4, 0.01);
    psz::Rng rng = psz::make_rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(rng));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExpansionSampler)->Arg(100)->Arg(1000);

void BM_EntropySurface(benchmark::State& state) {
    for (auto _ : state) {
        double acc = 0.0;
        for (int i = 0; i <= 100; ++i)
            for (int j = 0; j <= 100; ++j) {
                const double m = j / 100.0;
                acc += psz::cycle_totals(psz::EngineParams::from_p1(i / 100.0, {m, 0.5 * (1 - m), 0.5 * (1 - m)})).dS_R;
            }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_EntropySurface);

}  // namespace

BENCHMARK_MAIN();
