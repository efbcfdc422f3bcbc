#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "phasecade/channel.hpp"
#include "phasecade/metrics.hpp"
#include "phasecade/signal.hpp"
#include "phasecade/wavefront.hpp"

using namespace phasecade;

namespace {

constexpr std::size_t kLen = 512 * 8;

ComplexWaveform random_wave(unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    cvec x(kLen);
    for (auto& v : x) v = cplx(gauss(rng), gauss(rng));
    return ComplexWaveform{std::move(x), 8.0};
}

std::vector<double> random_phase(unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> phi(kLen);
    for (auto& v : phi) v = gauss(rng);
    return phi;
}

}  // namespace

static void BM_ApplyDispersion(benchmark::State& state) {
    const auto wave = random_wave(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_dispersion(wave, -0.38));
    }
}
BENCHMARK(BM_ApplyDispersion);

static void BM_ApplyPhaseModulator(benchmark::State& state) {
    const auto wave = random_wave(2);
    const auto phi = random_phase(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_phase_modulator(wave, phi));
    }
}
BENCHMARK(BM_ApplyPhaseModulator);

static void BM_BandlimitPhase(benchmark::State& state) {
    const auto phi = random_phase(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bandlimit_phase(phi, 0.55, 8.0));
    }
}
BENCHMARK(BM_BandlimitPhase);

static void BM_PhaseUpdate(benchmark::State& state) {
    const auto fwd = random_wave(5).samples;
    const auto bwd = random_wave(6).samples;
    const auto phi = random_phase(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(phase_update(fwd, bwd, phi, 0.25, 4.0, 8.0));
    }
}
BENCHMARK(BM_PhaseUpdate);

static void BM_ForwardPlanes(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto cw = make_cw(kLen, 512.0, 8.0);
    StageConfig stage;
    stage.gdd_norm = -0.38;
    PhaseProfileSet phases;
    for (int s = 0; s < n; ++s) phases.profiles.push_back(random_phase(10 + static_cast<unsigned>(s)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_forward_planes(cw, phases, stage));
    }
}
BENCHMARK(BM_ForwardPlanes)->Arg(1)->Arg(4);

static void BM_MatchedFilter(benchmark::State& state) {
    const PulseShape shape{0.1, 32, 8};
    const auto wave = shape_rrc(generate_qam_block(16, 512, 0), shape);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matched_filter_and_sample(wave, shape));
    }
}
BENCHMARK(BM_MatchedFilter);

static void BM_ComputeSdr(benchmark::State& state) {
    const PulseShape shape{0.1, 32, 8};
    const auto block = generate_qam_block(16, 512, 0);
    const auto wave = shape_rrc(block, shape);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_sdr(wave, block, shape));
    }
}
BENCHMARK(BM_ComputeSdr);

static void BM_SolverIterations(benchmark::State& state) {
    SystemConfig cfg;
    cfg.block_length = 128;
    cfg.stage_count = 4;
    const auto inst = make_instance(cfg, 0);
    SolverConfig solver;
    solver.max_iterations = 10;
    solver.stall_tolerance_db = 0.0;  // never stalls: exactly 10 iterations
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(inst, solver));
    }
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_SolverIterations)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
