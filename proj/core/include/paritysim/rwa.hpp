#pragma once

// Analytic layer: rotating-frame transformation, Bessel-function transition
// amplitudes for one-photon, two-photon and sideband processes, and the
// transparency-angle solver. Amplitudes are angular frequencies with hbar
// factored out; the two-photon value follows the quoted quadratic form and
// carries an extra factor of frequency (see two_photon_amplitude).

#include <functional>

#include "paritysim/model.hpp"

namespace paritysim::rwa {

using model::DriveSpec;
using model::QubitParams;
using ops::ComplexMatrix;

enum class Process { one_photon, two_photon, red_sideband, blue_sideband, blue_two_photon };

struct TransitionAmplitude {
    Process process = Process::one_photon;
    double theta = 0.0;
    double value = 0.0; // rad/s (rad^2/s^2 for the quadratic two-photon form)
};

struct SidebandRates {
    double gamma_plus = 0.0;  // g_t / (Delta + omega_r), dimensionless
    double gamma_minus = 0.0; // g_t / (Delta - omega_r), dimensionless
    double delta_prime = 0.0; // Delta + (gamma_plus + gamma_minus) / 2
};

// Bessel function of the first kind, k in 0..3, by ascending power series
// with term-ratio cutoff 1e-16. The series contract holds for |x| <= 12;
// larger arguments are rejected.
double bessel_j(int k, double x);

// lambda = (Omega_t cos theta + Omega_l sin theta) / omega on the folded angle.
double lambda_param(double omega_l, double omega_t, double theta, double omega);

// (1/2) (Omega_l/2 cos - Omega_t/2 sin) [J0(lambda) + J2(lambda)]
TransitionAmplitude one_photon_amplitude(double omega_l, double omega_t, double theta,
                                         double omega);
// Same without the Bessel factor (the leading-order approximation).
TransitionAmplitude one_photon_amplitude_leading(double omega_l, double omega_t,
                                                 double theta);

// (1/8) [ (Wt^2 - Wl^2) sin^2 cos + Wl Wt (sin^3 - cos^2 sin) ]
TransitionAmplitude two_photon_amplitude(double omega_l, double omega_t, double theta);
// (1/2) (Wl/2 cos - Wt/2 sin) [-J1(lambda) - J3(lambda)] at drive frequency
// omega; equals the quadratic form divided by (omega sin theta) for small
// lambda. This is the variant with physical rad/s units.
TransitionAmplitude two_photon_amplitude_bessel(double omega_l, double omega_t,
                                                double theta, double omega);

struct SidebandResult {
    TransitionAmplitude red;
    TransitionAmplitude blue;
    SidebandRates rates;
    double dispersive_coeff = 0.0; // g_t (gamma_plus + gamma_minus), rad/s
};

// red/blue = -(1/2)(Wl/2 sin - Wt/2 cos) 2 gamma_-/+ ; gamma_± use the bare
// gap Delta, not omega_q. Rejects Delta = ±omega_r.
SidebandResult sideband_amplitudes(double omega_l, double omega_t, double theta,
                                   double g_t, double gap, double omega_r);

struct TransparencyAngles {
    double theta_star = 0.0;
    double mirror = 0.0;
    bool degenerate = false; // omega_t = 0: no finite solution
};

// tan(theta*) = Omega_l / Omega_t; the one-photon amplitude vanishes at
// theta* and at pi - theta*.
TransparencyAngles transparency_angles(double omega_l, double omega_t);

// ---- rotating frame ----

using OperatorFamily = std::function<ComplexMatrix(double)>;

// Conjugates the family by U(t) = exp[(i/2) sz sin(wt) lambda] and adds
// i (dU/dt) U^dagger, which cancels the cos(wt) sz drive component. The
// qubit factor is assumed first; works for dim 2 or 2(n_max+1).
OperatorFamily rotating_frame(OperatorFamily h_total, const QubitParams& q,
                              const DriveSpec& d);

} // namespace paritysim::rwa
