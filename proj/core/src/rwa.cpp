#include "paritysim/rwa.hpp"

#include <cmath>
#include <stdexcept>

namespace paritysim::rwa {

using model::fold_angle;

double bessel_j(int k, double x) {
    if (k < 0 || k > 3) throw std::invalid_argument("bessel_j: order must be in 0..3");
    if (std::abs(x) > 12.0)
        throw std::domain_error("bessel_j: |x| > 12 outside the series accuracy contract");
    // J_k(x) = sum_m (-1)^m / (m! (m+k)!) (x/2)^(2m+k)
    const double half = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= k; ++i) term *= half / double(i);
    double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= -(half * half) / (double(m) * double(m + k));
        sum += term;
        if (std::abs(term) <= 1e-16 * std::max(1.0, std::abs(sum))) break;
    }
    return sum;
}

double lambda_param(double omega_l, double omega_t, double theta, double omega) {
    if (omega <= 0.0) throw std::invalid_argument("lambda_param: omega must be positive");
    const double tf = fold_angle(theta);
    return (omega_t * std::cos(tf) + omega_l * std::sin(tf)) / omega;
}

TransitionAmplitude one_photon_amplitude(double omega_l, double omega_t, double theta,
                                         double omega) {
    const double tf = fold_angle(theta);
    const double prefactor =
        0.5 * (0.5 * omega_l * std::cos(tf) - 0.5 * omega_t * std::sin(tf));
    const double lam = lambda_param(omega_l, omega_t, theta, omega);
    const double bessel = bessel_j(0, lam) + bessel_j(2, lam);
    return {Process::one_photon, theta, prefactor * bessel};
}

TransitionAmplitude one_photon_amplitude_leading(double omega_l, double omega_t,
                                                 double theta) {
    const double tf = fold_angle(theta);
    return {Process::one_photon, theta,
            0.5 * (0.5 * omega_l * std::cos(tf) - 0.5 * omega_t * std::sin(tf))};
}

TransitionAmplitude two_photon_amplitude(double omega_l, double omega_t, double theta) {
    const double tf = fold_angle(theta);
    const double st = std::sin(tf);
    const double ct = std::cos(tf);
    const double value = ((omega_t * omega_t - omega_l * omega_l) * st * st * ct +
                          omega_l * omega_t * (st * st * st - ct * ct * st)) /
                         8.0;
    return {Process::two_photon, theta, value};
}

TransitionAmplitude two_photon_amplitude_bessel(double omega_l, double omega_t,
                                                double theta, double omega) {
    const double tf = fold_angle(theta);
    const double prefactor =
        0.5 * (0.5 * omega_l * std::cos(tf) - 0.5 * omega_t * std::sin(tf));
    const double lam = lambda_param(omega_l, omega_t, theta, omega);
    const double bessel = -bessel_j(1, lam) - bessel_j(3, lam);
    return {Process::two_photon, theta, prefactor * bessel};
}

SidebandResult sideband_amplitudes(double omega_l, double omega_t, double theta,
                                   double g_t, double gap, double omega_r) {
    if (gap == omega_r || gap == -omega_r)
        throw std::domain_error("sideband_amplitudes: gap = ±omega_r makes gamma_± diverge");
    SidebandResult out;
    out.rates.gamma_plus = g_t / (gap + omega_r);
    out.rates.gamma_minus = g_t / (gap - omega_r);
    out.rates.delta_prime = gap + 0.5 * (out.rates.gamma_plus + out.rates.gamma_minus);
    out.dispersive_coeff = g_t * (out.rates.gamma_plus + out.rates.gamma_minus);
    const double tf = fold_angle(theta);
    const double drive = 0.5 * omega_l * std::sin(tf) - 0.5 * omega_t * std::cos(tf);
    out.red = {Process::red_sideband, theta, -drive * out.rates.gamma_minus};
    out.blue = {Process::blue_sideband, theta, -drive * out.rates.gamma_plus};
    return out;
}

TransparencyAngles transparency_angles(double omega_l, double omega_t) {
    if (omega_t < 0.0 || omega_l < 0.0)
        throw std::invalid_argument("transparency_angles: amplitudes must be >= 0");
    TransparencyAngles out;
    if (omega_t == 0.0) {
        out.theta_star = std::numbers::pi / 2.0;
        out.mirror = std::numbers::pi / 2.0;
        out.degenerate = true;
        return out;
    }
    out.theta_star = std::atan(omega_l / omega_t);
    out.mirror = std::numbers::pi - out.theta_star;
    return out;
}

OperatorFamily rotating_frame(OperatorFamily h_total, const QubitParams& q,
                              const DriveSpec& d) {
    const double omega_q = model::qubit_frequency(q);
    const model::DriveAmplitudes amp = model::drive_amplitudes(d, omega_q);
    const double theta = model::bloch_angle(q);
    const double lam = lambda_param(amp.omega_l, amp.omega_t, theta, d.omega);
    const double omega = d.omega;

    return [h = std::move(h_total), lam, omega](double t) -> ComplexMatrix {
        ComplexMatrix ht = h(t);
        const Eigen::Index dim = ht.rows();
        const Eigen::Index block = dim / 2; // resonator dimension (1 for bare qubit)
        // U = exp[(i/2) sz sin(wt) lambda] is diagonal: phase +f/2 on the
        // excited sector, -f/2 on the ground sector.
        const double f = lam * std::sin(omega * t);
        const std::complex<double> ue = std::polar(1.0, 0.5 * f);
        Eigen::VectorXcd u(dim);
        for (Eigen::Index i = 0; i < dim; ++i) u(i) = (i < block) ? ue : std::conj(ue);
        ComplexMatrix rot = u.asDiagonal() * ht * u.conjugate().asDiagonal();
        // i (dU/dt) U^dagger = -(lambda w / 2) cos(wt) sz, the counter-term
        // that removes the cos(wt) sz drive component.
        const double counter = -0.5 * lam * omega * std::cos(omega * t);
        for (Eigen::Index i = 0; i < dim; ++i)
            rot(i, i) += (i < block) ? counter : -counter;
        return rot;
    };
}

} // namespace paritysim::rwa
