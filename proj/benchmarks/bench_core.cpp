#include <benchmark/benchmark.h>

#include "paritysim/analysis.hpp"
#include "paritysim/dynamics.hpp"
#include "paritysim/rwa.hpp"

using namespace paritysim;

namespace {

void BM_BesselJ(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-4;
        if (x > 10.0) x = 0.0;
        benchmark::DoNotOptimize(rwa::bessel_j(2, x));
    }
}
BENCHMARK(BM_BesselJ);

void BM_OnePhotonAmplitude(benchmark::State& state) {
    double theta = 0.3;
    for (auto _ : state) {
        theta += 1e-5;
        if (theta > 2.8) theta = 0.3;
        benchmark::DoNotOptimize(rwa::one_photon_amplitude(1.0, 2.0, theta, 50.0));
    }
}
BENCHMARK(BM_OnePhotonAmplitude);

void BM_PropagateQubit(benchmark::State& state) {
    const double gap = two_pi * 100.0;
    model::TimeDependentHamiltonian ham;
    ham.constant = 0.5 * gap * ops::pauli(ops::Pauli::z).matrix;
    ham.terms = model::drive_terms(std::numbers::pi / 2, 0.0, two_pi * 1.0, gap);
    dynamics::DecoherenceParams dec{two_pi * 0.1, two_pi * 0.5, 0.0};
    auto channels = dynamics::qubit_channels(dec);
    const double dt = (two_pi / gap) / 50.0;
    auto cfg = dynamics::propagation_config_for(gap, double(state.range(0)) * dt);
    for (auto _ : state) {
        auto traj = dynamics::propagate(ham, channels, {{2}}, dynamics::qubit_ground_density(), cfg);
        benchmark::DoNotOptimize(traj.p_e.back());
    }
    state.SetItemsProcessed(state.iterations() * std::lround(cfg.t_final / cfg.dt));
}
BENCHMARK(BM_PropagateQubit)->Arg(1000)->Arg(10000);

void BM_PropagateQubitResonator(benchmark::State& state) {
    dynamics::SidebandRunConfig sb;
    sb.qubit = {two_pi * 10.0, 0.0};
    sb.resonator = {two_pi * 3.0, two_pi * 0.04, two_pi * 0.01, int(state.range(0))};
    sb.coupling = {two_pi * 0.15, 0.0};
    sb.dec = {two_pi * 1e-3, two_pi * 2e-3, 0.0};
    sb.drive_omega = two_pi * 13.0;
    sb.omega_l = two_pi * 0.15;
    sb.n_bar_sim = 1.0;
    sb.t_final = 1.0;
    for (auto _ : state) {
        auto traj = dynamics::sideband_drive_run(sb);
        benchmark::DoNotOptimize(traj.p_e.back());
    }
}
BENCHMARK(BM_PropagateQubitResonator)->Arg(8)->Arg(12)->Arg(16);

void BM_SpectrumMap(benchmark::State& state) {
    analysis::SpectrumMapParams mp;
    mp.qubit = {two_pi * 10.0, 0.0};
    mp.resonator = {two_pi * 3.88, two_pi * 2.43e-3, two_pi * 7e-5, 8};
    mp.coupling = {two_pi * 0.04, 0.0};
    mp.dec = {two_pi * 3.85e-4, two_pi * 9.7e-3, 0.0};
    mp.drive.omega_max = two_pi * 0.01;
    mp.workers = 1;
    analysis::Axis theta{"theta_pi", {}};
    for (int i = 0; i < 61; ++i) theta.values.push_back(0.2 + 0.6 * i / 60.0);
    analysis::Axis freq{"frequency_hz", {}};
    for (int i = 0; i < 101; ++i) freq.values.push_back(8.0 + 8.0 * i / 100.0);
    for (auto _ : state) {
        auto grid = analysis::spectrum_map(rwa::Process::one_photon, mp, theta, freq);
        benchmark::DoNotOptimize(grid.values.data());
    }
}
BENCHMARK(BM_SpectrumMap);

} // namespace

BENCHMARK_MAIN();
