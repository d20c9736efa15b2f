#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "paritysim/analysis.hpp"

using namespace paritysim;
using analysis::PureDrive;
using analysis::Verdict;
using dynamics::DecoherenceParams;
using rwa::Process;

namespace {
constexpr double pi = std::numbers::pi;

const analysis::SelectionRule& find_row(const analysis::SelectionRuleTable& t, Process p,
                                        PureDrive d) {
    for (const auto& row : t.rows)
        if (row.process == p && row.drive == d) return row;
    throw std::runtime_error("row not found");
}

analysis::SpectrumMapParams scaled_map_params() {
    analysis::SpectrumMapParams p;
    p.qubit = {two_pi * 200.0, 0.0};
    p.resonator = {two_pi * 75.0, two_pi * 0.5, two_pi * 0.05, 8};
    p.coupling = {two_pi * 1.0, 0.0};
    p.dec = {two_pi * 0.2, two_pi * 1.0, 0.0};
    p.drive.omega_max = two_pi * 0.4;
    p.workers = 1;
    return p;
}
} // namespace

TEST_CASE("selection rule table reproduces the quoted verdict set") {
    const auto table = analysis::selection_rule_table(4);
    CHECK(table.rows.size() == 10);

    CHECK(find_row(table, Process::one_photon, PureDrive::transversal).verdict ==
          Verdict::allowed);
    CHECK(find_row(table, Process::one_photon, PureDrive::longitudinal).verdict ==
          Verdict::forbidden);
    CHECK(find_row(table, Process::red_sideband, PureDrive::transversal).verdict ==
          Verdict::forbidden);
    CHECK(find_row(table, Process::red_sideband, PureDrive::longitudinal).verdict ==
          Verdict::allowed);
    CHECK(find_row(table, Process::blue_sideband, PureDrive::transversal).verdict ==
          Verdict::forbidden);
    CHECK(find_row(table, Process::blue_sideband, PureDrive::longitudinal).verdict ==
          Verdict::allowed);
    CHECK(find_row(table, Process::two_photon, PureDrive::transversal).verdict ==
          Verdict::forbidden);
    CHECK(find_row(table, Process::two_photon, PureDrive::longitudinal).verdict ==
          Verdict::forbidden);
    CHECK(find_row(table, Process::blue_two_photon, PureDrive::transversal).verdict ==
          Verdict::allowed);
    CHECK(find_row(table, Process::blue_two_photon, PureDrive::longitudinal).verdict ==
          Verdict::allowed);

    // drive parities follow the classification, not hard-coding
    for (const auto& row : table.rows) {
        const auto expected = row.drive == PureDrive::transversal ? ops::ParityClass::odd
                                                                  : ops::ParityClass::even;
        CHECK(row.drive_parity == expected);
    }
}

TEST_CASE("table verdicts agree with the analytic amplitude null pattern") {
    const auto table = analysis::selection_rule_table(4); // omega_max = 1
    for (const auto& row : table.rows) {
        if (row.verdict == Verdict::forbidden)
            CHECK(std::abs(row.amplitude) < 1e-12);
        else
            CHECK(std::abs(row.amplitude) > 1e-8);
    }
}

TEST_CASE("blue two-photon model amplitude is live for both pure drives") {
    const double g = 0.05, w = 0.675;
    CHECK(analysis::blue_two_photon_model_amplitude(1.0, 0.0, pi / 2, w, g) > 1e-8);
    CHECK(analysis::blue_two_photon_model_amplitude(0.0, 1.0, pi / 2, w, g) > 1e-8);
    // dies with the transversal coupling as the potential untilts completely
    CHECK(analysis::blue_two_photon_model_amplitude(1.0, 1.0, 0.02, w, g) <
          0.05 * analysis::blue_two_photon_model_amplitude(1.0, 1.0, pi / 2, w, g));
}

TEST_CASE("one-photon spectrum map has transparency columns") {
    auto p = scaled_map_params();
    p.drive.phase = pi / 2; // equal quadratures
    analysis::Axis theta{"theta_pi", {0.15, 0.25, 0.4, 0.5, 0.6, 0.75, 0.85}};
    analysis::Axis freq{"frequency_hz", {}};
    for (int i = 0; i <= 80; ++i) freq.values.push_back(180.0 + 5.0 * i);
    const auto grid = analysis::spectrum_map(Process::one_photon, p, theta, freq);

    double peak = 0.0;
    for (double v : grid.values) peak = std::max(peak, v);
    CHECK(peak == doctest::Approx(1.0));

    for (std::size_t iy = 0; iy < freq.values.size(); ++iy) {
        CHECK(grid.at(1, iy) < 1e-12); // theta = pi/4
        CHECK(grid.at(5, iy) < 1e-12); // theta = 3pi/4
        CHECK(grid.at(3, iy) >= 0.0);
    }
    // resonant cell at the sweet spot is bright
    std::size_t iy200 = 4; // 200 Hz
    CHECK(freq.values[iy200] == doctest::Approx(200.0));
    CHECK(grid.at(3, iy200) > 0.5);
}

TEST_CASE("red sideband map with a transversal drive is dark at the sweet spot") {
    auto p = scaled_map_params();
    p.drive.phase = pi; // purely transversal
    analysis::Axis theta{"theta_pi", {0.3, 0.5, 0.7}};
    analysis::Axis freq{"frequency_hz", {}};
    for (int i = 0; i <= 60; ++i) freq.values.push_back(100.0 + 2.5 * i);
    const auto grid = analysis::spectrum_map(Process::red_sideband, p, theta, freq);
    for (std::size_t iy = 0; iy < freq.values.size(); ++iy) CHECK(grid.at(1, iy) < 1e-12);
    double off_sweet = 0.0;
    for (std::size_t iy = 0; iy < freq.values.size(); ++iy)
        off_sweet = std::max(off_sweet, grid.at(0, iy));
    CHECK(off_sweet > 0.1); // tilted potential lights the sideband back up
}

TEST_CASE("linewidth model collapses to gamma2 when pure dephasing vanishes") {
    auto p = scaled_map_params();
    p.dec = {two_pi * 0.4, two_pi * 0.2, 0.0}; // gamma2 = gamma1/2: gamma_phi = 0
    p.drive.phase = pi;
    analysis::Axis theta{"theta_pi", {0.35, 0.5, 0.65}};
    analysis::Axis freq{"frequency_hz", {}};
    // wide grid covering all centers (hyperbola from 200 to ~235)
    for (int i = 0; i <= 1200; ++i) freq.values.push_back(190.0 + 0.05 * i);
    const auto grid = analysis::spectrum_map(Process::one_photon, p, theta, freq);
    for (std::size_t ix = 0; ix < theta.values.size(); ++ix) {
        std::vector<double> row(freq.values.size());
        for (std::size_t iy = 0; iy < row.size(); ++iy) row[iy] = grid.at(ix, iy);
        const double fwhm_hz = analysis::fitted_fwhm(freq.values, row);
        // half-width gamma_q in angular units -> FWHM on a Hz axis
        CHECK(fwhm_hz == doctest::Approx(2.0 * p.dec.gamma2 / two_pi).epsilon(0.02));
    }
}

TEST_CASE("overlay map covers every process layer") {
    auto p = scaled_map_params();
    p.drive.phase = pi / 3;
    analysis::OverlayMultipliers mult;
    analysis::Axis theta{"theta_pi", {}};
    for (int i = 0; i <= 40; ++i) theta.values.push_back(0.2 + 0.6 * i / 40.0);
    analysis::Axis freq{"frequency_hz", {}};
    for (int i = 0; i <= 160; ++i) freq.values.push_back(80.0 + 2.0 * i);
    const auto grid = analysis::sideband_overlay_map(p, mult, theta, freq);
    // bands near w_q (~200), w_q/2 (~100), w_q±w_r (125/275 partially), (w_q+w_r)/2 (~137)
    auto column_max_near = [&](double f_target) {
        double best = 0.0;
        for (std::size_t ix = 0; ix < theta.values.size(); ++ix)
            for (std::size_t iy = 0; iy < freq.values.size(); ++iy)
                if (std::abs(freq.values[iy] - f_target) < 6.0)
                    best = std::max(best, grid.at(ix, iy));
        return best;
    };
    CHECK(column_max_near(200.0) > 0.5);  // one-photon hyperbola bottom
    CHECK(column_max_near(100.0) > 0.5);  // two-photon
    CHECK(column_max_near(125.0) > 0.5);  // red sideband
    CHECK(column_max_near(137.5) > 0.5);  // blue two-photon
}

TEST_CASE("non-monotone map axes are rejected") {
    auto p = scaled_map_params();
    analysis::Axis bad{"theta_pi", {0.5, 0.4}};
    analysis::Axis freq{"frequency_hz", {100.0, 200.0}};
    CHECK_THROWS_AS(analysis::spectrum_map(Process::one_photon, p, bad, freq),
                    std::invalid_argument);
}

TEST_CASE("phase sweep analytic examples") {
    analysis::PhaseSweepParams p;
    p.qubit = {two_pi * 8.2e9, 0.0};
    p.dec = {1.0 / 2.6e-6, 1.0 / 1.0e-7, 0.0};
    p.drive.omega_max = two_pi * 1.0e7;
    p.drive.temperature = 0.125;
    p.workers = 2;

    const auto grid = analysis::phase_sweep(p, {0.0, pi / 2, pi});
    CHECK(grid.values[2] > 0.45); // saturated
    CHECK(grid.values[2] <= 0.5);
    CHECK(grid.values[0] == doctest::Approx(0.04292488908).epsilon(2e-3)); // thermal floor
    CHECK(grid.values[0] >= 0.04);
    CHECK(grid.values[0] <= 0.05);

    analysis::PhaseSweepParams cold = p;
    cold.drive.temperature = 0.0;
    const auto cg = analysis::phase_sweep(cold, {0.0, pi});
    CHECK(cg.values[0] == doctest::Approx(0.0));
    CHECK(cg.values[1] > 0.45);

    analysis::PhaseSweepParams biased = p;
    biased.qubit.bias = 1.0;
    CHECK_THROWS_AS(analysis::phase_sweep(biased, {0.0}), std::invalid_argument);
}

TEST_CASE("phase sweep oracle agrees with the analytic path at scale") {
    analysis::PhaseSweepParams p;
    p.qubit = {two_pi * 500.0, 0.0};
    p.dec = {two_pi * 0.5, two_pi * 2.0, 0.0};
    p.drive.omega_max = two_pi * 8.0;
    p.drive.temperature = 0.0;
    p.workers = 2;
    const std::vector<double> phis{0.4, pi / 2, 0.8 * pi, pi};
    const auto analytic = analysis::phase_sweep(p, phis);
    p.use_oracle = true;
    p.oracle_t_final_factor = 14.0;
    const auto oracle = analysis::phase_sweep(p, phis);
    for (std::size_t i = 0; i < phis.size(); ++i)
        CHECK(oracle.values[i] == doctest::Approx(analytic.values[i]).epsilon(0.02));
}

TEST_CASE("weak-drive branch follows sin^2(phi/2)") {
    analysis::PhaseSweepParams p;
    p.qubit = {two_pi * 8.2e9, 0.0};
    p.dec = {1.0 / 2.6e-6, 1.0 / 1.0e-7, 0.0};
    p.drive.omega_max = two_pi * 2.0e4;
    p.drive.temperature = 0.0;
    std::vector<double> phis;
    for (int i = 0; i < 32; ++i) phis.push_back(two_pi * i / 31.0);
    const auto grid = analysis::phase_sweep(p, phis);
    double num = 0.0, den = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const double s2 = std::pow(std::sin(0.5 * phis[i]), 2);
        num += grid.values[i] * s2;
        den += s2 * s2;
        peak = std::max(peak, grid.values[i]);
    }
    const double c = num / den;
    for (std::size_t i = 0; i < phis.size(); ++i)
        CHECK(std::abs(grid.values[i] - c * std::pow(std::sin(0.5 * phis[i]), 2)) <
              0.02 * peak);
}

TEST_CASE("power broadening formula") {
    DecoherenceParams dec{two_pi * 385e3, two_pi * 9.7e6, 0.0};
    CHECK(analysis::power_broadening(0.0, dec, two_pi * 40e6) == dec.gamma2);
    CHECK(analysis::power_broadening(0.16, dec, two_pi * 40e6) / two_pi ==
          doctest::Approx(160.91479273e6).epsilon(1e-6));
    // sqrt growth at large photon number
    const double g = two_pi * 40e6;
    const double big = analysis::power_broadening(4000.0, dec, g);
    const double doubled = analysis::power_broadening(8000.0, dec, g);
    CHECK(doubled / big == doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
    DecoherenceParams bad{0.0, two_pi * 9.7e6, 0.0};
    CHECK_THROWS_AS(analysis::power_broadening(0.1, bad, g), std::invalid_argument);
}

TEST_CASE("ac stark shift and photon number conversion") {
    CHECK(analysis::ac_stark_shift(0.0, 1.0, 10.0) == 0.0);
    CHECK(analysis::ac_stark_shift(2.0, 1.0, 10.0) ==
          doctest::Approx(2.0 * analysis::ac_stark_shift(1.0, 1.0, 10.0)));
    const double shift = analysis::ac_stark_shift(33.0, two_pi * 40e6, two_pi * 4.32e9);
    CHECK(shift / two_pi == doctest::Approx(24.444444444e6).epsilon(1e-9));
    CHECK(analysis::photons_from_stark_shift(shift, two_pi * 40e6, two_pi * 4.32e9) ==
          doctest::Approx(33.0).epsilon(1e-12));
    CHECK_THROWS_AS(analysis::ac_stark_shift(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("critical photon number") {
    CHECK(analysis::critical_photon_number(1.0, 2.0) == 1.0);
    CHECK(analysis::critical_photon_number(two_pi * 40e6, two_pi * 4.32e9) ==
          doctest::Approx(2916.0).epsilon(1e-12));
    CHECK(analysis::critical_photon_number(1.0, 108.0) == 2916.0);
    CHECK(analysis::critical_photon_number(1.0, 4.0 * 108.0) == 16.0 * 2916.0);
}

TEST_CASE("stray excitation probability") {
    CHECK(analysis::stray_excitation(two_pi * 8.2e9, 0.0) == 0.0);
    const double p = analysis::stray_excitation(two_pi * 8.2e9, 0.125);
    CHECK(p == doctest::Approx(0.04292488908).epsilon(1e-9));
    CHECK(std::abs(p - 0.0429) < 1e-4);
    const double p2 = analysis::stray_excitation(two_pi * 8.2e9, 0.25);
    CHECK(p2 == doctest::Approx(std::sqrt(p)).epsilon(1e-12));
}

TEST_CASE("resonator transmission lineshape") {
    model::ResonatorParams r{two_pi * 3.88e9, two_pi * 2.43e6, two_pi * 7.0e4, 8};
    const double g = two_pi * 40e6;
    const double delta = two_pi * 4.32e9;
    const double kappa_tot = r.kappa_external + r.kappa_internal;
    std::vector<double> omega(3001);
    for (std::size_t i = 0; i < omega.size(); ++i)
        omega[i] = r.omega_r - 6 * kappa_tot + 12 * kappa_tot * double(i) / 3000.0;

    const auto tg = analysis::resonator_transmission(r, analysis::QubitState::ground, g, delta, omega);
    CHECK(analysis::fitted_fwhm(omega, tg) == doctest::Approx(kappa_tot).epsilon(0.01));
    CHECK(analysis::fitted_fwhm(omega, tg) / two_pi == doctest::Approx(2.5e6).epsilon(0.01));

    // unit peak without internal loss
    model::ResonatorParams lossless = r;
    lossless.kappa_internal = 0.0;
    const auto tl = analysis::resonator_transmission(lossless, analysis::QubitState::ground, g,
                                                     delta, omega);
    CHECK(*std::max_element(tl.begin(), tl.end()) == doctest::Approx(1.0).epsilon(1e-6));

    // qubit state flips the pull; separation is 2 g^2/delta
    const auto te = analysis::resonator_transmission(r, analysis::QubitState::excited, g, delta, omega);
    const auto argmax = [&](const std::vector<double>& v) {
        return omega[std::max_element(v.begin(), v.end()) - v.begin()];
    };
    const double separation = argmax(te) - argmax(tg);
    CHECK(separation == doctest::Approx(2.0 * g * g / delta).epsilon(0.02));
}

TEST_CASE("one-photon map classification matches the steady-state oracle") {
    // five sampled cells: three bright on the hyperbola, the transparency
    // column, and a far-detuned cell
    const double gap = two_pi * 200.0;
    DecoherenceParams dec{two_pi * 0.2, two_pi * 1.0, 0.0};
    const double amp = two_pi * 0.4;

    auto p = scaled_map_params();
    p.dec = dec;
    p.drive.phase = pi / 2; // omega_l = omega_t
    analysis::Axis theta{"theta_pi", {0.25, 0.35, 0.5, 0.65}};
    analysis::Axis freq{"frequency_hz", {}};
    for (int i = 0; i <= 300; ++i) freq.values.push_back(150.0 + 0.5 * i);
    const auto grid = analysis::spectrum_map(Process::one_photon, p, theta, freq);

    struct Cell {
        double theta;
        double omega_factor; // drive at omega_factor * omega_q(theta)
    };
    const Cell cells[] = {{0.35 * pi, 1.0}, {0.5 * pi, 1.0}, {0.65 * pi, 1.0},
                          {0.25 * pi, 1.0}, {0.5 * pi, 0.95}};
    double oracle[5];
    for (int i = 0; i < 5; ++i) {
        const double theta_v = cells[i].theta;
        const double omega_q = gap / std::sin(theta_v);
        model::TimeDependentHamiltonian ham;
        ham.constant = 0.5 * omega_q * ops::pauli(ops::Pauli::z).matrix;
        const double w_l = amp * std::cos(pi / 4);
        const double w_t = amp * std::sin(pi / 4);
        ham.terms = model::drive_terms(theta_v, w_l, w_t, cells[i].omega_factor * omega_q);
        auto cfg = dynamics::propagation_config_for(omega_q, 12.0 / dec.gamma1);
        oracle[i] = dynamics::steady_state_pe(ham, dynamics::qubit_channels(dec), {{2}},
                                              dynamics::qubit_ground_density(), cfg)
                        .p_e;
    }
    double oracle_peak = 0.0;
    for (double v : oracle) oracle_peak = std::max(oracle_peak, v);

    auto grid_cell = [&](double theta_pi_v, double f) {
        std::size_t ix = 0, iy = 0;
        for (std::size_t k = 0; k < theta.values.size(); ++k)
            if (std::abs(theta.values[k] - theta_pi_v) < 1e-9) ix = k;
        double best = 1e300;
        for (std::size_t k = 0; k < freq.values.size(); ++k)
            if (std::abs(freq.values[k] - f) < best) {
                best = std::abs(freq.values[k] - f);
                iy = k;
            }
        return grid.at(ix, iy);
    };
    for (int i = 0; i < 5; ++i) {
        const double omega_q = gap / std::sin(cells[i].theta);
        const double f = cells[i].omega_factor * omega_q / two_pi;
        const bool oracle_bright = oracle[i] > 0.05 * oracle_peak;
        const bool map_bright = grid_cell(cells[i].theta / pi, f) > 0.05;
        CHECK(oracle_bright == map_bright);
    }
}
