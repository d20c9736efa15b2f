#include "paritysim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace paritysim::model {

namespace {
using ops::Pauli;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}
} // namespace

double bloch_angle(const QubitParams& q) {
    require(q.gap > 0.0, "bloch_angle: qubit gap must be positive");
    return std::atan2(q.gap, q.bias);
}

double qubit_frequency(const QubitParams& q) {
    return std::hypot(q.gap, q.bias);
}

double fold_angle(double theta) {
    return theta > std::numbers::pi / 2.0 ? std::numbers::pi - theta : theta;
}

double thermal_excitation_probability(double omega_q, double temperature) {
    if (temperature <= 0.0) return 0.0;
    return std::exp(-hbar * omega_q / (boltzmann_kb * temperature));
}

DriveAmplitudes drive_amplitudes(const DriveSpec& d, double omega_q) {
    require(d.omega_max >= 0.0, "drive_amplitudes: omega_max must be >= 0");
    const double phi = d.phase;
    const double c = std::cos(phi / 2.0);
    const double s = std::sin(phi / 2.0);
    // Amplitude ratio rho between the two antennas; eta is the fraction of
    // the opposite quadrature that leaks through when they do not cancel.
    const double rho = std::pow(10.0, -std::abs(d.imbalance_db) / 20.0);
    const double eta = (1.0 - rho) / (1.0 + rho) + d.residual_leakage;
    DriveAmplitudes out;
    out.omega_l = d.omega_max * std::sqrt(c * c + eta * eta * s * s);
    out.coherent_t = d.omega_max * std::sqrt(s * s + eta * eta * c * c);
    out.thermal_floor = thermal_excitation_probability(omega_q, d.temperature) * omega_q;
    out.omega_t = out.coherent_t + out.thermal_floor;
    return out;
}

MultipoleMoments multipole_moments(const LoopGeometry& g) {
    require(g.area > 0.0, "multipole_moments: loop area must be positive");
    MultipoleMoments m;
    if (g.kind == LoopKind::single_loop) {
        m.dipole = std::abs(g.current) * g.area;
    } else {
        require(g.separation_d > 0.0, "multipole_moments: gradiometer needs separation_d > 0");
        m.quadrupole = 4.0 * g.current * g.area * g.separation_d / 3.0;
    }
    return m;
}

FieldCoupling field_coupling(double b_sym, double b_grad, const LoopGeometry& squid,
                             const LoopGeometry& gradiometer) {
    require(squid.kind == LoopKind::single_loop, "field_coupling: first geometry must be the SQUID loop");
    require(gradiometer.kind == LoopKind::gradiometer, "field_coupling: second geometry must be the gradiometer");
    FieldCoupling f;
    f.omega_l = multipole_moments(squid).dipole * b_sym / hbar;
    f.omega_t = multipole_moments(gradiometer).quadrupole * b_grad / hbar;
    return f;
}

LabeledOperator build_h_system(const QubitParams& q, const ResonatorParams& r,
                               const CouplingParams& c, Basis basis) {
    require(r.n_max >= 1, "build_h_system: n_max must be >= 1");
    const int n_max = r.n_max;
    const auto boson = ops::boson_ops(n_max);
    const ComplexMatrix x = ops::embed_qubit(ops::pauli(Pauli::x).matrix, n_max);
    const ComplexMatrix z = ops::embed_qubit(ops::pauli(Pauli::z).matrix, n_max);
    const ComplexMatrix field = ops::embed_resonator(
        ComplexMatrix(boson.annihilate.matrix + boson.create.matrix), n_max);
    const ComplexMatrix num = ops::embed_resonator(boson.number.matrix, n_max);

    ComplexMatrix h;
    if (basis == Basis::bare) {
        h = 0.5 * q.gap * x + 0.5 * q.bias * z + r.omega_r * num +
            c.g_transversal * (field * z) + c.g_longitudinal * (field * x);
    } else {
        const double theta = bloch_angle(q);
        const double ct = std::cos(theta);
        const double st = std::sin(theta);
        h = 0.5 * qubit_frequency(q) * z + r.omega_r * num +
            c.g_transversal * ct * (field * z) - c.g_transversal * st * (field * x) +
            c.g_longitudinal * ct * (field * x) + c.g_longitudinal * st * (field * z);
    }
    ops::HilbertSpace space{{2, Eigen::Index(n_max + 1)}};
    return {std::move(space), std::move(h),
            basis == Basis::bare ? "h_system_bare" : "h_system_eigen"};
}

ComplexMatrix drive_matrix(double theta, double omega_l, double omega_t, double omega,
                           double t) {
    const double tf = fold_angle(theta);
    const double ct = std::cos(tf);
    const double st = std::sin(tf);
    const double envelope = std::cos(omega * t);
    const double cx = 0.5 * (omega_l * ct - omega_t * st) * envelope;
    const double cz = 0.5 * (omega_t * ct + omega_l * st) * envelope;
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(0, 0) = cz;
    h(1, 1) = -cz;
    h(0, 1) = cx;
    h(1, 0) = cx;
    return h;
}

LabeledOperator build_h_drive(const QubitParams& q, const DriveSpec& d, double t) {
    const double omega_q = qubit_frequency(q);
    const DriveAmplitudes amp = drive_amplitudes(d, omega_q);
    return {{{2}}, drive_matrix(bloch_angle(q), amp.omega_l, amp.omega_t, d.omega, t),
            "h_drive"};
}

void TimeDependentHamiltonian::evaluate(double t, ComplexMatrix& out) const {
    out = constant;
    for (const CosineTerm& term : terms)
        out.noalias() += (term.amplitude * std::cos(term.omega * t + term.phase)) * term.op;
}

ComplexMatrix TimeDependentHamiltonian::operator()(double t) const {
    ComplexMatrix out;
    evaluate(t, out);
    return out;
}

std::vector<CosineTerm> drive_terms(double theta, double omega_l, double omega_t,
                                    double omega) {
    const double tf = fold_angle(theta);
    const double ct = std::cos(tf);
    const double st = std::sin(tf);
    std::vector<CosineTerm> terms;
    terms.push_back({ops::pauli(Pauli::x).matrix, 0.5 * (omega_l * ct - omega_t * st), omega, 0.0});
    terms.push_back({ops::pauli(Pauli::z).matrix, 0.5 * (omega_t * ct + omega_l * st), omega, 0.0});
    return terms;
}

std::vector<CosineTerm> drive_terms_embedded(double theta, double omega_l, double omega_t,
                                             double omega, int n_max) {
    std::vector<CosineTerm> terms = drive_terms(theta, omega_l, omega_t, omega);
    for (CosineTerm& term : terms) term.op = ops::embed_qubit(term.op, n_max);
    return terms;
}

} // namespace paritysim::model
