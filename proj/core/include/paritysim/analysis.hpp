#pragma once

// Figure-level synthesis and calibration: selection-rule tables, spectrum
// maps, phase sweeps, and the experimental calibration formulas.

#include <string>
#include <vector>

#include "paritysim/dynamics.hpp"
#include "paritysim/rwa.hpp"

namespace paritysim::analysis {

using dynamics::DecoherenceParams;
using model::CouplingParams;
using model::DriveSpec;
using model::QubitParams;
using model::ResonatorParams;

struct Axis {
    std::string label;
    std::vector<double> values;
};

// 2-D grid of (theta or phi) x drive frequency; values stored x-major.
struct SweepGrid {
    Axis x;
    Axis y;
    std::vector<double> values;

    double& at(std::size_t ix, std::size_t iy) { return values[ix * y.values.size() + iy]; }
    double at(std::size_t ix, std::size_t iy) const { return values[ix * y.values.size() + iy]; }
};

// ---- selection rules ----

enum class Verdict { allowed, forbidden };
enum class PureDrive { transversal, longitudinal };

struct SelectionRule {
    rwa::Process process;
    PureDrive drive;
    ops::ParityClass drive_parity;    // parity of the bare drive operator
    ops::ParityClass operator_parity; // parity of the full effective operator
    std::string qubit_point;          // "degeneracy"
    Verdict verdict;
    double amplitude; // matching analytic amplitude at theta = pi/2
};

struct SelectionRuleTable {
    std::vector<SelectionRule> rows;
};

struct SelectionRuleParams {
    double omega_max = 1.0; // reference pure-drive amplitude, rad/s
    double g_t = 0.05;      // transversal coupling, rad/s
    double gap = 1.0;       // qubit gap at the degeneracy point, rad/s
    double omega_r = 0.35;  // resonator frequency, rad/s
};

// Enumerates {one-photon, two-photon, red sideband, blue sideband, two-photon
// blue sideband} x {pure transversal, pure longitudinal} at the degeneracy
// point. Verdicts come from operator/state parity products computed on
// matrices; amplitudes from the analytic layer confirm them.
SelectionRuleTable selection_rule_table(int n_max,
                                        const SelectionRuleParams& p = SelectionRuleParams{});

const char* to_string(Verdict v);
const char* to_string(PureDrive d);
const char* to_string(rwa::Process p);

// ---- spectrum maps ----

struct SpectrumMapParams {
    QubitParams qubit; // gap fixed; bias follows the scanned theta
    ResonatorParams resonator;
    CouplingParams coupling;
    DecoherenceParams dec;
    DriveSpec drive;                   // phase/omega_max/temperature used; omega from the grid
    double linewidth_prefactor = 1.0;  // gamma_q = pref (gamma2 + gamma_phi |theta - pi/2|)
    double drive_multiplier = 1.0;     // per-process drive scale for overlays
    int workers = 1;
};

// Deterministic grid: value(theta, omega) = A^2(theta) L(omega; center(theta),
// gamma_q(theta)), peak-normalized Lorentzian, global maximum scaled to 1.
// theta axis in units of pi; frequency axis in Hz.
SweepGrid spectrum_map(rwa::Process kind, const SpectrumMapParams& p, const Axis& theta_axis,
                       const Axis& freq_axis);

// Overlay of all five processes on a shared grid (max across layers), each
// with its own drive multiplier.
struct OverlayMultipliers {
    double one_photon = 1.0;
    double two_photon = 10.0;
    double red_sideband = 10.0;
    double blue_sideband = 10.0;
    double blue_two_photon = 10.0;
};
SweepGrid sideband_overlay_map(const SpectrumMapParams& p, const OverlayMultipliers& mult,
                               const Axis& theta_axis, const Axis& freq_axis);

// Third-order model amplitude for the two-photon blue sideband: both drive
// quadratures contribute at second order, weighted by the transversal
// coupling. Nonzero for either pure drive at the degeneracy point.
double blue_two_photon_model_amplitude(double omega_l, double omega_t, double theta,
                                       double omega, double g_t);

// ---- phase sweep ----

struct PhaseSweepParams {
    QubitParams qubit; // bias 0: operated at theta = pi/2
    DecoherenceParams dec;
    DriveSpec drive; // phase comes from the grid; omega forced to omega_q
    bool use_oracle = false;
    double oracle_t_final_factor = 12.0; // time budget in units of 1/gamma1
    int workers = 1;
};

// p_e(phi) at resonance. The thermal floor acts as an incoherent excitation
// rate chosen so the undriven steady state sits at p_str exactly; the
// coherent part of the drive follows the antenna split.
SweepGrid phase_sweep(const PhaseSweepParams& p, const std::vector<double>& phi_values);

// gamma_up with gamma_up / (gamma1 + gamma_up) = p_str.
double thermal_up_rate(double gamma1, double p_str);

// ---- calibration formulas ----

// gamma_q = sqrt(gamma2^2 + n_bar_d (2g)^2 gamma2/gamma1)
double power_broadening(double n_bar_d, const DecoherenceParams& dec, double g);

// delta_omega_q = 2 n_bar g_t^2 / delta, and its inverse for n_bar.
double ac_stark_shift(double n_bar, double g_t, double delta);
double photons_from_stark_shift(double shift, double g_t, double delta);

// n_crit = (delta / (2 g_t))^2
double critical_photon_number(double g_t, double delta);

// exp(-hbar omega_q / kB T_e); 0 at T_e = 0.
double stray_excitation(double omega_q, double temperature);

enum class QubitState { ground, excited };

// Lorentzian transmission magnitude over the probe grid (rad/s): center
// omega_r ± g_t^2/delta by qubit state, FWHM kappa_x + kappa_i, peak
// kappa_x / (kappa_x + kappa_i). Warns on stderr outside the dispersive
// regime (g_t/|delta| > 0.1).
std::vector<double> resonator_transmission(const ResonatorParams& r, QubitState state,
                                           double g_t, double delta,
                                           const std::vector<double>& probe_omega);

// FWHM of a sampled single-peak curve by interpolated half-maximum crossings.
double fitted_fwhm(const std::vector<double>& x, const std::vector<double>& y);

} // namespace paritysim::analysis
