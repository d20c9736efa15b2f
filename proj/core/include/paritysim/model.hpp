#pragma once

// Physical parameter types, the two-antenna field model producing the
// longitudinal/transversal drive pair, multipole moments of loop geometries,
// and the system / drive Hamiltonian builders.
//
// All frequencies and rates are angular (rad/s) internally; hbar is factored
// out of every Hamiltonian, so matrix entries are rad/s as well.

#include <functional>
#include <string>
#include <vector>

#include "paritysim/operators.hpp"

namespace paritysim::model {

using ops::ComplexMatrix;
using ops::LabeledOperator;

struct QubitParams {
    double gap = 0.0;  // tunnel coupling Delta, rad/s, > 0
    double bias = 0.0; // energy bias epsilon, rad/s, any sign
};

struct ResonatorParams {
    double omega_r = 0.0;        // rad/s
    double kappa_external = 0.0; // rad/s
    double kappa_internal = 0.0; // rad/s
    int n_max = 8;               // Fock truncation
};

struct CouplingParams {
    double g_transversal = 0.0;  // rad/s
    double g_longitudinal = 0.0; // rad/s; vanishes for the sample geometry
};

struct DriveSpec {
    double omega = 0.0;         // drive frequency, rad/s
    double phase = 0.0;         // antenna relative phase phi, wrapped to [0, 2pi)
    double omega_max = 0.0;     // total drive scale, rad/s
    double imbalance_db = 0.0;  // antenna amplitude mismatch
    double residual_leakage = 0.0; // leftover opposite-quadrature amplitude fraction
    double temperature = 0.0;   // effective temperature T_e, kelvin
};

enum class LoopKind { single_loop, gradiometer };

struct LoopGeometry {
    LoopKind kind = LoopKind::single_loop;
    double area = 0.0;         // m^2, single-loop total or one gradiometer lobe
    double current = 0.0;      // A
    double separation_d = 0.0; // m, gradiometer half-offset
};

// Bloch angle theta = atan2(gap, bias) in (0, pi); pi/2 at zero bias.
double bloch_angle(const QubitParams& q);

// omega_q = sqrt(gap^2 + bias^2).
double qubit_frequency(const QubitParams& q);

// Coupling magnitudes depend on the magnitude of the bias tilt only, so all
// drive-side formulas are evaluated on the folded angle min(theta, pi-theta)
// and spectra come out mirror-symmetric about the sweet spot.
double fold_angle(double theta);

// exp(-hbar omega_q / kB T); 0 at T = 0.
double thermal_excitation_probability(double omega_q, double temperature);

struct DriveAmplitudes {
    double omega_l = 0.0;       // longitudinal amplitude, rad/s
    double omega_t = 0.0;       // transversal amplitude, rad/s, thermal floor included
    double thermal_floor = 0.0; // the additive thermal part of omega_t
    double coherent_t = 0.0;    // antenna part of omega_t, stored to avoid cancellation

    double omega_t_coherent() const { return coherent_t; }
};

// Antenna interference split: |cos(phi/2)|, |sin(phi/2)| at zero imbalance.
// Imbalance and residual leakage add an opposite-quadrature floor; the
// thermal floor enters omega_t additively as p_str * omega_q.
DriveAmplitudes drive_amplitudes(const DriveSpec& d, double omega_q);

struct MultipoleMoments {
    double dipole = 0.0;     // p, A m^2
    double quadrupole = 0.0; // Q, A m^3
};

// single_loop -> (|I| A, 0); gradiometer -> (0, 4 I A d / 3).
MultipoleMoments multipole_moments(const LoopGeometry& g);

// hbar Omega_l = p B_sym, hbar Omega_t = Q dB/dx; returns angular frequencies.
struct FieldCoupling {
    double omega_l = 0.0;
    double omega_t = 0.0;
};
FieldCoupling field_coupling(double b_sym, double b_grad, const LoopGeometry& squid,
                             const LoopGeometry& gradiometer);

enum class Basis { bare, eigen };

// Static qubit-resonator Hamiltonian on the 2(n_max+1)-dimensional space.
//   bare:  gap/2 sx + bias/2 sz + w_r n + (a+a^)(g_t sz + g_l sx)
//   eigen: w_q/2 sz + w_r n + (a+a^)[(g_t cos0 + g_l sin0) sz
//                                    + (g_l cos0 - g_t sin0) sx]
LabeledOperator build_h_system(const QubitParams& q, const ResonatorParams& r,
                               const CouplingParams& c, Basis basis);

// Qubit-space drive Hamiltonian at time t in the eigenbasis,
//   cos(wt) [ (W_l cos0 - W_t sin0) sx + (W_t cos0 + W_l sin0) sz ] / 2
// with the folded Bloch angle.
LabeledOperator build_h_drive(const QubitParams& q, const DriveSpec& d, double t);

// Same matrix from explicit amplitudes; used by sweeps and oracles.
ComplexMatrix drive_matrix(double theta, double omega_l, double omega_t, double omega,
                           double t);

// ---- time-dependent Hamiltonian plumbing for the propagation oracle ----

// H(t) = constant + sum_k amplitude_k cos(omega_k t + phase_k) op_k.
struct CosineTerm {
    ComplexMatrix op;
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;
};

struct TimeDependentHamiltonian {
    ComplexMatrix constant;
    std::vector<CosineTerm> terms;

    Eigen::Index dim() const { return constant.rows(); }
    void evaluate(double t, ComplexMatrix& out) const;
    ComplexMatrix operator()(double t) const;
};

// The two cosine terms of the eigenbasis drive on the bare qubit space.
std::vector<CosineTerm> drive_terms(double theta, double omega_l, double omega_t,
                                    double omega);

// Drive embedded as (qubit term) (x) identity on the resonator factor.
std::vector<CosineTerm> drive_terms_embedded(double theta, double omega_l, double omega_t,
                                             double omega, int n_max);

} // namespace paritysim::model
