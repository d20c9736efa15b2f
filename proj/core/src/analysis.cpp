#include "paritysim/analysis.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "paritysim/threading.hpp"

namespace paritysim::analysis {

using ops::ComplexMatrix;
using ops::ParityClass;

namespace {

double process_center(rwa::Process kind, double omega_q, double omega_r) {
    switch (kind) {
    case rwa::Process::one_photon: return omega_q;
    case rwa::Process::two_photon: return 0.5 * omega_q;
    case rwa::Process::red_sideband: return omega_q - omega_r;
    case rwa::Process::blue_sideband: return omega_q + omega_r;
    case rwa::Process::blue_two_photon: return 0.5 * (omega_q + omega_r);
    }
    return omega_q;
}

double process_amplitude(rwa::Process kind, double omega_l, double omega_t, double theta,
                         double center, double g_t, double gap, double omega_r) {
    switch (kind) {
    case rwa::Process::one_photon:
        return rwa::one_photon_amplitude(omega_l, omega_t, theta, center).value;
    case rwa::Process::two_photon:
        return rwa::two_photon_amplitude(omega_l, omega_t, theta).value;
    case rwa::Process::red_sideband:
        return rwa::sideband_amplitudes(omega_l, omega_t, theta, g_t, gap, omega_r).red.value;
    case rwa::Process::blue_sideband:
        return rwa::sideband_amplitudes(omega_l, omega_t, theta, g_t, gap, omega_r).blue.value;
    case rwa::Process::blue_two_photon:
        return blue_two_photon_model_amplitude(omega_l, omega_t, theta, center, g_t);
    }
    return 0.0;
}

void require_monotone(const Axis& axis) {
    for (std::size_t i = 1; i < axis.values.size(); ++i)
        if (axis.values[i] <= axis.values[i - 1])
            throw std::invalid_argument("spectrum_map: axis \"" + axis.label +
                                        "\" must be strictly increasing");
}

SweepGrid raw_spectrum_map(rwa::Process kind, const SpectrumMapParams& p,
                           const Axis& theta_axis, const Axis& freq_axis) {
    require_monotone(theta_axis);
    require_monotone(freq_axis);
    SweepGrid grid;
    grid.x = theta_axis;
    grid.y = freq_axis;
    grid.values.assign(theta_axis.values.size() * freq_axis.values.size(), 0.0);

    const double gamma_phi = std::max(0.0, p.dec.gamma_phi());
    parallel_for_index(theta_axis.values.size(), p.workers, [&](std::size_t ix) {
        const double theta = theta_axis.values[ix] * std::numbers::pi;
        if (theta <= 0.0 || theta >= std::numbers::pi) return; // leave the column zero
        const double omega_q = p.qubit.gap / std::sin(theta);
        model::DriveSpec d = p.drive;
        d.omega_max *= p.drive_multiplier;
        const model::DriveAmplitudes amp = model::drive_amplitudes(d, omega_q);
        const double center = process_center(kind, omega_q, p.resonator.omega_r);
        const double a = process_amplitude(kind, amp.omega_l, amp.omega_t, theta, center,
                                           p.coupling.g_transversal, p.qubit.gap,
                                           p.resonator.omega_r);
        const double gamma_q = p.linewidth_prefactor *
                               (p.dec.gamma2 + gamma_phi * std::abs(theta - std::numbers::pi / 2.0));
        for (std::size_t iy = 0; iy < freq_axis.values.size(); ++iy) {
            const double omega = two_pi * freq_axis.values[iy];
            const double del = omega - center;
            const double lorentz = gamma_q * gamma_q / (del * del + gamma_q * gamma_q);
            grid.at(ix, iy) = a * a * lorentz;
        }
    });
    return grid;
}

void normalize_unit_peak(SweepGrid& grid) {
    double peak = 0.0;
    for (double v : grid.values) peak = std::max(peak, v);
    if (peak > 0.0)
        for (double& v : grid.values) v /= peak;
}

} // namespace

const char* to_string(Verdict v) { return v == Verdict::allowed ? "allowed" : "forbidden"; }

const char* to_string(PureDrive d) {
    return d == PureDrive::transversal ? "transversal" : "longitudinal";
}

const char* to_string(rwa::Process p) {
    switch (p) {
    case rwa::Process::one_photon: return "one_photon";
    case rwa::Process::two_photon: return "two_photon";
    case rwa::Process::red_sideband: return "red_sideband";
    case rwa::Process::blue_sideband: return "blue_sideband";
    case rwa::Process::blue_two_photon: return "blue_two_photon";
    }
    return "?";
}

SelectionRuleTable selection_rule_table(int n_max, const SelectionRuleParams& p) {
    const auto parity = ops::parity_ops(n_max);
    const ComplexMatrix& pi = parity.composite.matrix;
    const auto boson = ops::boson_ops(n_max);

    // Pure drives at the degeneracy point act as sigma_x (transversal) and
    // sigma_z (longitudinal) in the eigenbasis; the sideband ladder action
    // comes from the transversal qubit-resonator coupling sigma_x (a + a^).
    const ComplexMatrix drive_t = ops::embed_qubit(ops::pauli(ops::Pauli::x).matrix, n_max);
    const ComplexMatrix drive_l = ops::embed_qubit(ops::pauli(ops::Pauli::z).matrix, n_max);
    const ComplexMatrix coupling =
        ops::embed_qubit(ops::pauli(ops::Pauli::x).matrix, n_max) *
        ops::embed_resonator(ComplexMatrix(boson.annihilate.matrix + boson.create.matrix), n_max);

    const Eigen::Index res_dim = n_max + 1;
    auto state_parity = [&](int qubit_excited, int n) {
        const Eigen::Index idx = (qubit_excited ? 0 : 1) * res_dim + n;
        return pi(idx, idx).real();
    };

    struct ProcessSpec {
        rwa::Process kind;
        int drive_photons;
        int coupling_vertices;
        int n_initial;
        int n_change;
    };
    const ProcessSpec processes[] = {
        {rwa::Process::one_photon, 1, 0, 0, 0},
        {rwa::Process::two_photon, 2, 0, 0, 0},
        {rwa::Process::red_sideband, 1, 1, 1, -1},
        {rwa::Process::blue_sideband, 1, 1, 0, +1},
        {rwa::Process::blue_two_photon, 2, 1, 0, +1},
    };

    const double theta = std::numbers::pi / 2.0;
    SelectionRuleTable table;
    for (const ProcessSpec& ps : processes) {
        for (PureDrive drive : {PureDrive::transversal, PureDrive::longitudinal}) {
            const ComplexMatrix& d = drive == PureDrive::transversal ? drive_t : drive_l;
            ComplexMatrix op = ComplexMatrix::Identity(2 * res_dim, 2 * res_dim);
            for (int k = 0; k < ps.drive_photons; ++k) op = op * d;
            for (int k = 0; k < ps.coupling_vertices; ++k) op = op * coupling;

            SelectionRule row;
            row.process = ps.kind;
            row.drive = drive;
            row.drive_parity = ops::parity_classify(d, pi);
            row.operator_parity = ops::parity_classify(op, pi);
            row.qubit_point = "degeneracy";

            if (row.operator_parity == ParityClass::none) {
                row.verdict = Verdict::allowed;
            } else {
                const double p_op = row.operator_parity == ParityClass::even ? 1.0 : -1.0;
                const double p_i = state_parity(0, ps.n_initial);
                const double p_f = state_parity(1, ps.n_initial + ps.n_change);
                row.verdict =
                    p_op * p_i * p_f > 0.0 ? Verdict::allowed : Verdict::forbidden;
            }

            const double omega_l = drive == PureDrive::longitudinal ? p.omega_max : 0.0;
            const double omega_t = drive == PureDrive::transversal ? p.omega_max : 0.0;
            const double center = process_center(ps.kind, p.gap, p.omega_r);
            row.amplitude = process_amplitude(ps.kind, omega_l, omega_t, theta, center,
                                              p.g_t, p.gap, p.omega_r);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

double blue_two_photon_model_amplitude(double omega_l, double omega_t, double theta,
                                       double omega, double g_t) {
    const double tf = model::fold_angle(theta);
    const double dz = 0.5 * (omega_t * std::cos(tf) + omega_l * std::sin(tf));
    const double dx = 0.5 * (omega_l * std::cos(tf) - omega_t * std::sin(tf));
    const double lam = 2.0 * dz / omega;
    return g_t * std::sin(tf) * (rwa::bessel_j(2, lam) + 0.5 * (dx / omega) * (dx / omega));
}

SweepGrid spectrum_map(rwa::Process kind, const SpectrumMapParams& p, const Axis& theta_axis,
                       const Axis& freq_axis) {
    SweepGrid grid = raw_spectrum_map(kind, p, theta_axis, freq_axis);
    normalize_unit_peak(grid);
    return grid;
}

SweepGrid sideband_overlay_map(const SpectrumMapParams& p, const OverlayMultipliers& mult,
                               const Axis& theta_axis, const Axis& freq_axis) {
    const std::pair<rwa::Process, double> layers[] = {
        {rwa::Process::one_photon, mult.one_photon},
        {rwa::Process::two_photon, mult.two_photon},
        {rwa::Process::red_sideband, mult.red_sideband},
        {rwa::Process::blue_sideband, mult.blue_sideband},
        {rwa::Process::blue_two_photon, mult.blue_two_photon},
    };
    SweepGrid out;
    out.x = theta_axis;
    out.y = freq_axis;
    out.values.assign(theta_axis.values.size() * freq_axis.values.size(), 0.0);
    for (const auto& [kind, m] : layers) {
        SpectrumMapParams lp = p;
        lp.drive_multiplier = m;
        SweepGrid layer = raw_spectrum_map(kind, lp, theta_axis, freq_axis);
        normalize_unit_peak(layer); // measured overlays are scaled per process
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = std::max(out.values[i], layer.values[i]);
    }
    normalize_unit_peak(out);
    return out;
}

double thermal_up_rate(double gamma1, double p_str) {
    if (p_str <= 0.0) return 0.0;
    if (p_str >= 1.0) throw std::invalid_argument("thermal_up_rate: p_str must be < 1");
    return gamma1 * p_str / (1.0 - p_str);
}

SweepGrid phase_sweep(const PhaseSweepParams& p, const std::vector<double>& phi_values) {
    if (p.qubit.bias != 0.0)
        throw std::invalid_argument("phase_sweep: operated at the degeneracy point (bias = 0)");
    const double omega_q = model::qubit_frequency(p.qubit);
    const double theta = std::numbers::pi / 2.0;
    const double p_str = model::thermal_excitation_probability(omega_q, p.drive.temperature);

    DecoherenceParams dec = p.dec;
    dec.gamma_up = thermal_up_rate(dec.gamma1, p_str);
    dec.validate();

    SweepGrid grid;
    grid.x = {"phi", phi_values};
    grid.y = {"drive_frequency_hz", {omega_q / two_pi}};
    grid.values.assign(phi_values.size(), 0.0);

    parallel_for_index(phi_values.size(), p.workers, [&](std::size_t i) {
        model::DriveSpec d = p.drive;
        d.phase = phi_values[i];
        d.omega = omega_q;
        const model::DriveAmplitudes amp = model::drive_amplitudes(d, omega_q);
        const double rabi =
            2.0 * std::abs(rwa::one_photon_amplitude(amp.omega_l, amp.omega_t_coherent(),
                                                     theta, omega_q)
                               .value);
        const double analytic =
            dynamics::driven_tls_steady_state(rabi, 0.0, dec.gamma1, dec.gamma_up, dec.gamma2);
        if (!p.use_oracle) {
            grid.values[i] = analytic;
            return;
        }
        model::TimeDependentHamiltonian ham;
        ham.constant = 0.5 * omega_q * ops::pauli(ops::Pauli::z).matrix;
        ham.terms = model::drive_terms(theta, amp.omega_l, amp.omega_t_coherent(), omega_q);
        dynamics::PropagationConfig cfg = dynamics::propagation_config_for(
            omega_q, p.oracle_t_final_factor / dec.gamma1);
        ComplexMatrix rho0 = ComplexMatrix::Zero(2, 2); // warm start at the analytic guess
        rho0(0, 0) = analytic;
        rho0(1, 1) = 1.0 - analytic;
        grid.values[i] =
            dynamics::steady_state_pe(ham, dynamics::qubit_channels(dec), {{2}}, rho0, cfg)
                .p_e;
    });
    return grid;
}

double power_broadening(double n_bar_d, const DecoherenceParams& dec, double g) {
    if (dec.gamma1 <= 0.0)
        throw std::invalid_argument("power_broadening: gamma1 must be > 0");
    const double term = n_bar_d * (2.0 * g) * (2.0 * g) * dec.gamma2 / dec.gamma1;
    return std::sqrt(dec.gamma2 * dec.gamma2 + term);
}

double ac_stark_shift(double n_bar, double g_t, double delta) {
    if (delta == 0.0) throw std::invalid_argument("ac_stark_shift: delta must be nonzero");
    return 2.0 * n_bar * g_t * g_t / delta;
}

double photons_from_stark_shift(double shift, double g_t, double delta) {
    if (delta == 0.0 || g_t == 0.0)
        throw std::invalid_argument("photons_from_stark_shift: needs delta and g_t nonzero");
    return shift * delta / (2.0 * g_t * g_t);
}

double critical_photon_number(double g_t, double delta) {
    if (g_t <= 0.0) throw std::invalid_argument("critical_photon_number: g_t must be > 0");
    const double r = delta / (2.0 * g_t);
    return r * r;
}

double stray_excitation(double omega_q, double temperature) {
    if (temperature < 0.0) throw std::invalid_argument("stray_excitation: temperature must be >= 0");
    return model::thermal_excitation_probability(omega_q, temperature);
}

std::vector<double> resonator_transmission(const ResonatorParams& r, QubitState state,
                                           double g_t, double delta,
                                           const std::vector<double>& probe_omega) {
    if (std::abs(g_t / delta) > 0.1)
        std::cerr << "warning: g_t/delta = " << std::abs(g_t / delta)
                  << " exceeds 0.1; dispersive transmission model is inaccurate\n";
    const double pull = g_t * g_t / delta;
    const double center = r.omega_r + (state == QubitState::excited ? pull : -pull);
    const double kappa_tot = r.kappa_external + r.kappa_internal;
    const double peak = kappa_tot > 0.0 ? r.kappa_external / kappa_tot : 0.0;
    const double hw = 0.5 * kappa_tot;
    std::vector<double> out(probe_omega.size());
    for (std::size_t i = 0; i < probe_omega.size(); ++i) {
        const double del = probe_omega[i] - center;
        out[i] = peak * hw * hw / (del * del + hw * hw);
    }
    return out;
}

double fitted_fwhm(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("fitted_fwhm: bad curve");
    std::size_t imax = 0;
    for (std::size_t i = 1; i < y.size(); ++i)
        if (y[i] > y[imax]) imax = i;
    const double half = 0.5 * y[imax];
    if (imax == 0 || imax + 1 == y.size())
        throw std::invalid_argument("fitted_fwhm: peak not interior to the grid");
    auto cross = [&](std::size_t a, std::size_t b) {
        const double f = (half - y[a]) / (y[b] - y[a]);
        return x[a] + f * (x[b] - x[a]);
    };
    double left = x.front();
    for (std::size_t i = imax; i-- > 0;) {
        if (y[i] <= half) {
            left = cross(i, i + 1);
            break;
        }
    }
    double right = x.back();
    for (std::size_t i = imax + 1; i < y.size(); ++i) {
        if (y[i] <= half) {
            right = cross(i, i - 1);
            break;
        }
    }
    return right - left;
}

} // namespace paritysim::analysis
