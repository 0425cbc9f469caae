#include <benchmark/benchmark.h>

#include "pinlab/chain.hpp"
#include "pinlab/free_energy.hpp"
#include "pinlab/rng.hpp"
#include "pinlab/sampler.hpp"
#include "pinlab/variational.hpp"

namespace {

void bm_factorize(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    pinlab::banded_spd m = pinlab::precision_matrix(N, pinlab::pin_set{}, false);
    for (auto _ : state) {
        pinlab::banded_ldlt f = pinlab::factorize(m);
        benchmark::DoNotOptimize(f.log_det());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_factorize)->RangeMultiplier(4)->Range(64, 16384);

void bm_minimiser(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    pinlab::boundary_data bc = pinlab::boundary_data::clamped(1.0, -12.0, 1.0, 12.0);
    for (auto _ : state) {
        pinlab::lattice_field f = pinlab::discrete_minimiser(N, bc, pinlab::pin_set{});
        benchmark::DoNotOptimize(f.v.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_minimiser)->RangeMultiplier(4)->Range(64, 16384);

void bm_gibbs_sweep(benchmark::State& state) {
    pinlab::sampler_config cfg;
    cfg.N = static_cast<int>(state.range(0));
    cfg.bc = pinlab::boundary_data::clamped(0.0, 0.0, 0.0, 0.0);
    cfg.epsilon = 1.0;
    pinlab::chain_state s = pinlab::initial_state(cfg);
    pinlab::rng g(12345);
    for (auto _ : state) {
        pinlab::gibbs_sweep(s, cfg.epsilon, g);
        benchmark::DoNotOptimize(s.field.v.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_gibbs_sweep)->RangeMultiplier(4)->Range(64, 4096);

void bm_bridge_map(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    pinlab::rng g(7);
    pinlab::lattice_field f = pinlab::sample_integrated_rw(N, 0.0, 0.0, g);
    for (auto _ : state) {
        pinlab::lattice_field b = pinlab::bridge_map(f);
        benchmark::DoNotOptimize(b.v.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_bridge_map)->RangeMultiplier(4)->Range(64, 16384);

// Full subset enumeration: 2^(N-1) terms, each with a banded factorization.
void bm_ratio_exact(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(pinlab::ratio_exact(N, 2.0));
}
BENCHMARK(bm_ratio_exact)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);

void bm_classify_free(benchmark::State& state) {
    for (auto _ : state) {
        pinlab::phase_report rep = pinlab::classify_free(1.0, -12.0, 288.0);
        benchmark::DoNotOptimize(rep.sigma_min);
    }
}
BENCHMARK(bm_classify_free);

}  // namespace

BENCHMARK_MAIN();
