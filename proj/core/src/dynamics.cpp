#include "paritysim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace paritysim::dynamics {

namespace {

constexpr std::complex<double> minus_i{0.0, -1.0};

// RK4 stepping engine for the Lindblad flow, templated on the matrix type so
// the 2x2 qubit-only case runs on fixed-size matrices.
template <class Mat>
struct Engine {
    struct Term {
        Mat op;
        double amplitude;
        double omega;
        double phase;
    };
    Mat h_const;
    std::vector<Term> terms;
    std::vector<Mat> L, Ldag, LdL;
    Mat diag_mask; // combined elementwise action of all diagonal channels
    bool has_diag_mask = false;
    Mat h, k1, k2, k3, k4, stage, t1, t2;

    Engine(const TimeDependentHamiltonian& ham, const std::vector<CollapseChannel>& channels,
           Eigen::Index dim) {
        h_const = ham.constant;
        for (const CosineTerm& c : ham.terms)
            terms.push_back({Mat(c.op), c.amplitude, c.omega, c.phase});
        diag_mask = Mat::Zero(dim, dim);
        for (const CollapseChannel& ch : channels) {
            if (ch.rate == 0.0) continue;
            Mat l = std::sqrt(ch.rate) * Mat(ch.op);
            const Mat off = l - Mat(l.diagonal().asDiagonal());
            if (off.cwiseAbs().maxCoeff() == 0.0) {
                // D[L] acts elementwise on rho for diagonal L
                for (Eigen::Index i = 0; i < dim; ++i)
                    for (Eigen::Index j = 0; j < dim; ++j)
                        diag_mask(i, j) += l(i, i) * std::conj(l(j, j)) -
                                           0.5 * (std::norm(l(i, i)) + std::norm(l(j, j)));
                has_diag_mask = true;
                continue;
            }
            Ldag.push_back(l.adjoint());
            LdL.push_back(Mat(l.adjoint() * l));
            L.push_back(std::move(l));
        }
        h = k1 = k2 = k3 = k4 = stage = t1 = t2 = Mat::Zero(dim, dim);
    }

    void eval_h(double t) {
        h = h_const;
        for (const Term& term : terms)
            h.noalias() += (term.amplitude * std::cos(term.omega * t + term.phase)) * term.op;
    }

    // rho and h are Hermitian at every stage, so each commutator and
    // anticommutator needs a single product plus its adjoint.
    void rhs(double t, const Mat& rho, Mat& out) {
        eval_h(t);
        t1.noalias() = h * rho;
        t2 = minus_i * t1;
        out = t2 + t2.adjoint();
        for (std::size_t k = 0; k < L.size(); ++k) {
            t1.noalias() = L[k] * rho;
            out.noalias() += t1 * Ldag[k];
            t1.noalias() = LdL[k] * rho;
            out -= 0.5 * (t1 + t1.adjoint());
        }
        if (has_diag_mask) out.array() += diag_mask.array() * rho.array();
    }

    void step(double t, double dt, Mat& rho) {
        rhs(t, rho, k1);
        stage = rho + (0.5 * dt) * k1;
        rhs(t + 0.5 * dt, stage, k2);
        stage = rho + (0.5 * dt) * k2;
        rhs(t + 0.5 * dt, stage, k3);
        stage = rho + dt * k3;
        rhs(t + dt, stage, k4);
        rho.noalias() += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
};

template <class Mat>
double excited_population(const Mat& rho) {
    const Eigen::Index block = rho.rows() / 2;
    double p = 0.0;
    for (Eigen::Index i = 0; i < block; ++i) p += rho(i, i).real();
    return p;
}

template <class Mat>
double photon_number(const Mat& rho) {
    const Eigen::Index block = rho.rows() / 2;
    double n = 0.0;
    for (Eigen::Index q = 0; q < 2; ++q)
        for (Eigen::Index k = 0; k < block; ++k) n += double(k) * rho(q * block + k, q * block + k).real();
    return n;
}

template <class Mat>
double top_level_population(const Mat& rho) {
    const Eigen::Index block = rho.rows() / 2;
    return rho(block - 1, block - 1).real() + rho(2 * block - 1, 2 * block - 1).real();
}

template <class Mat>
double min_eigenvalue(const Mat& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

[[noreturn]] void throw_step_diagnostic(const char* what, double value, double t, double dt) {
    std::ostringstream os;
    os << what << " (value " << value << " at t = " << t
       << "); the fixed RK4 step dt = " << dt << " is too large for this model";
    throw NumericError(os.str());
}

template <class Mat>
void check_sample(const Mat& rho, double t, double dt, bool with_resonator,
                  double truncation_guard) {
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-6) throw_step_diagnostic("trace drift exceeds 1e-6", tr - 1.0, t, dt);
    const double p = excited_population(rho);
    if (p < -1e-9 || p > 1.0 + 1e-9) throw_step_diagnostic("p_e outside [0, 1]", p, t, dt);
    const double lmin = min_eigenvalue(rho);
    if (lmin < -1e-6) throw_step_diagnostic("density matrix negativity exceeds 1e-6", lmin, t, dt);
    if (with_resonator && truncation_guard > 0.0) {
        const double top = top_level_population(rho);
        if (top > truncation_guard)
            throw_step_diagnostic("Fock truncation breach: top level population", top, t, dt);
    }
}

void validate_initial_state(const ComplexMatrix& rho0, Eigen::Index dim) {
    if (rho0.rows() != dim || rho0.cols() != dim)
        throw std::invalid_argument("propagate: rho0 dimension does not match the space");
    if (!ops::is_hermitian(rho0, 1e-9))
        throw std::invalid_argument("propagate: rho0 is not Hermitian");
    if (std::abs(rho0.trace().real() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate: rho0 trace is not 1");
    if (min_eigenvalue(rho0) < -1e-9)
        throw std::invalid_argument("propagate: rho0 is not positive semidefinite");
}

template <class Mat>
TrajectoryResult propagate_impl(const TimeDependentHamiltonian& ham,
                                const std::vector<CollapseChannel>& channels,
                                const HilbertSpace& space, const ComplexMatrix& rho0,
                                const PropagationConfig& cfg) {
    const Eigen::Index dim = space.total_dim();
    const bool with_resonator = space.factor_dims.size() > 1;
    Engine<Mat> engine(ham, channels, dim);
    Mat rho = rho0;

    const long steps = std::lround(std::ceil(cfg.t_final / cfg.dt));
    const int stride = std::max(1, cfg.record_stride);

    TrajectoryResult out;
    out.times.reserve(steps / stride + 2);
    out.p_e.reserve(steps / stride + 2);
    if (with_resonator) out.n_mean.reserve(steps / stride + 2);

    auto record = [&](double t) {
        check_sample(rho, t, cfg.dt, with_resonator, 1e-3);
        out.times.push_back(t);
        out.p_e.push_back(excited_population(rho));
        if (with_resonator) out.n_mean.push_back(photon_number(rho));
    };

    record(0.0);
    for (long k = 0; k < steps; ++k) {
        const double t = double(k) * cfg.dt;
        engine.step(t, cfg.dt, rho);
        if ((k + 1) % stride == 0 || k + 1 == steps) record(double(k + 1) * cfg.dt);
    }
    out.final_state = rho;
    return out;
}

template <class Mat>
SteadyStateResult steady_state_impl(const TimeDependentHamiltonian& ham,
                                    const std::vector<CollapseChannel>& channels,
                                    const HilbertSpace& space, const ComplexMatrix& rho0,
                                    const PropagationConfig& cfg, double drift_tol) {
    const Eigen::Index dim = space.total_dim();
    const bool with_resonator = space.factor_dims.size() > 1;
    Engine<Mat> engine(ham, channels, dim);
    Mat rho = rho0;

    const double window_len = cfg.steady_window * cfg.t_final;
    const long steps_per_window = std::max<long>(1, std::lround(window_len / cfg.dt));
    const long max_windows = std::lround(std::ceil(cfg.t_final / (double(steps_per_window) * cfg.dt)));

    double prev_mean = 0.0;
    double drift = 0.0;
    bool have_prev = false;
    bool converged = false;
    long k = 0;
    for (long w = 0; w < max_windows; ++w) {
        double sum = 0.0;
        for (long s = 0; s < steps_per_window; ++s, ++k) {
            engine.step(double(k) * cfg.dt, cfg.dt, rho);
            sum += excited_population(rho);
        }
        check_sample(rho, double(k) * cfg.dt, cfg.dt, with_resonator, 1e-3);
        const double mean = sum / double(steps_per_window);
        if (have_prev) {
            drift = std::abs(mean - prev_mean);
            if (converged)
                return {mean, drift, int(w + 1), double(k) * cfg.dt};
            if (drift < drift_tol) converged = true; // one confirmation window follows
        }
        prev_mean = mean;
        have_prev = true;
    }
    if (converged) return {prev_mean, drift, int(max_windows), double(k) * cfg.dt};
    std::ostringstream os;
    os << "steady_state_pe did not converge: window drift " << drift << " >= " << drift_tol
       << " after " << max_windows << " windows";
    throw ConvergenceError(os.str(), drift);
}

} // namespace

void DecoherenceParams::validate() const {
    if (gamma1 < 0.0 || gamma2 < 0.0 || gamma_up < 0.0)
        throw std::invalid_argument("DecoherenceParams: rates must be >= 0");
    if (gamma_phi() < -1e-15)
        throw std::invalid_argument("DecoherenceParams: gamma2 >= (gamma1 + gamma_up)/2 required");
}

PropagationConfig propagation_config_for(double omega_fastest, double t_final, int oversample) {
    if (omega_fastest <= 0.0 || t_final <= 0.0 || oversample < 1)
        throw std::invalid_argument("propagation_config_for: bad arguments");
    PropagationConfig cfg;
    cfg.dt = (two_pi / omega_fastest) / (50.0 * double(oversample));
    cfg.t_final = t_final;
    const double steps = t_final / cfg.dt;
    cfg.record_stride = std::max(1, int(steps / 3000.0));
    return cfg;
}

std::vector<CollapseChannel> qubit_channels(const DecoherenceParams& dec, int n_max) {
    dec.validate();
    auto embed = [&](const ComplexMatrix& m) {
        return n_max > 0 ? ops::embed_qubit(m, n_max) : m;
    };
    std::vector<CollapseChannel> ch;
    ch.push_back({embed(ops::pauli(ops::Pauli::minus).matrix), dec.gamma1});
    ch.push_back({embed(ops::pauli(ops::Pauli::plus).matrix), dec.gamma_up});
    ch.push_back({embed(ops::pauli(ops::Pauli::z).matrix), 0.5 * std::max(0.0, dec.gamma_phi())});
    return ch;
}

namespace {

// Necessary step-size condition: at least 50 steps per period of every
// explicit drive tone. The caller owns the bound against the full model
// (propagation_config_for computes it from omega_fastest).
void check_step_against_drives(const TimeDependentHamiltonian& h, double dt) {
    for (const CosineTerm& term : h.terms) {
        const double omega = std::abs(term.omega);
        if (omega > 0.0 && dt > (two_pi / omega) / 50.0 * (1.0 + 1e-12))
            throw std::invalid_argument(
                "propagate: dt exceeds (2 pi / omega_fastest) / 50 for a drive tone");
    }
}

} // namespace

TrajectoryResult propagate(const TimeDependentHamiltonian& h,
                           const std::vector<CollapseChannel>& channels,
                           const HilbertSpace& space, const ComplexMatrix& rho0,
                           const PropagationConfig& cfg) {
    const Eigen::Index dim = space.total_dim();
    validate_initial_state(rho0, dim);
    if (cfg.dt <= 0.0 || cfg.t_final <= 0.0)
        throw std::invalid_argument("propagate: dt and t_final must be positive");
    check_step_against_drives(h, cfg.dt);
    if (dim == 2) return propagate_impl<Eigen::Matrix2cd>(h, channels, space, rho0, cfg);
    return propagate_impl<ComplexMatrix>(h, channels, space, rho0, cfg);
}

SteadyStateResult steady_state_pe(const TimeDependentHamiltonian& h,
                                  const std::vector<CollapseChannel>& channels,
                                  const HilbertSpace& space, const ComplexMatrix& rho0,
                                  const PropagationConfig& cfg, double drift_tol) {
    const Eigen::Index dim = space.total_dim();
    validate_initial_state(rho0, dim);
    check_step_against_drives(h, cfg.dt);
    bool dissipative = false;
    for (const CollapseChannel& ch : channels) dissipative = dissipative || ch.rate > 0.0;
    if (!dissipative)
        throw std::invalid_argument("steady_state_pe: a steady state needs dissipation");
    if (dim == 2) return steady_state_impl<Eigen::Matrix2cd>(h, channels, space, rho0, cfg, drift_tol);
    return steady_state_impl<ComplexMatrix>(h, channels, space, rho0, cfg, drift_tol);
}

TrajectoryResult sideband_drive_run(const SidebandRunConfig& cfg) {
    const int n_max = cfg.resonator.n_max;
    const double omega_q = model::qubit_frequency(cfg.qubit);
    const double theta = model::bloch_angle(cfg.qubit);
    const double kappa = cfg.resonator.kappa_external + cfg.resonator.kappa_internal;

    TimeDependentHamiltonian ham;
    ham.constant = model::build_h_system(cfg.qubit, cfg.resonator, cfg.coupling,
                                         model::Basis::eigen)
                       .matrix;
    ham.terms = model::drive_terms_embedded(theta, cfg.omega_l, cfg.omega_t,
                                            cfg.drive_omega, n_max);

    const auto boson = ops::boson_ops(n_max);
    std::complex<double> alpha0{0.0, 0.0};
    if (cfg.n_bar_sim > 0.0) {
        if (kappa <= 0.0)
            throw std::invalid_argument(
                "sideband_drive_run: maintaining n_bar_sim > 0 needs kappa > 0");
        // Resonant tone xi (a e^{iwt} + a^ e^{-iwt}); steady displacement
        // alpha = -2 i xi / kappa, so xi = kappa sqrt(n_bar)/2.
        const double xi = 0.5 * kappa * std::sqrt(cfg.n_bar_sim);
        const ComplexMatrix field =
            ops::embed_resonator(ComplexMatrix(boson.annihilate.matrix + boson.create.matrix), n_max);
        const ComplexMatrix quad = ops::embed_resonator(
            ComplexMatrix(std::complex<double>(0.0, 1.0) *
                          (boson.annihilate.matrix - boson.create.matrix)),
            n_max);
        ham.terms.push_back({field, xi, cfg.resonator.omega_r, 0.0});
        ham.terms.push_back({quad, xi, cfg.resonator.omega_r, -std::numbers::pi / 2.0});
        alpha0 = std::complex<double>(0.0, -2.0 * xi / kappa);
    }

    std::vector<CollapseChannel> channels = qubit_channels(cfg.dec, n_max);
    channels.push_back({ops::embed_resonator(boson.annihilate.matrix, n_max), kappa});

    ComplexVector ground = ComplexVector::Zero(2);
    ground(1) = 1.0;
    const ComplexMatrix rho0 = product_density(ground, coherent_state(alpha0, n_max));

    const double omega_fastest =
        std::max({omega_q + cfg.resonator.omega_r, cfg.drive_omega, cfg.resonator.omega_r});
    PropagationConfig pcfg = propagation_config_for(omega_fastest, cfg.t_final, cfg.oversample);

    HilbertSpace space{{2, Eigen::Index(n_max + 1)}};
    return propagate(ham, channels, space, rho0, pcfg);
}

double driven_tls_steady_state(double rabi, double detuning, double gamma_down,
                               double gamma_up, double gamma2) {
    if (gamma_down <= 0.0)
        throw std::invalid_argument("driven_tls_steady_state: gamma_down must be > 0");
    const double s = 0.5 * rabi * rabi * gamma2 / (gamma2 * gamma2 + detuning * detuning);
    return (gamma_up + s) / (gamma_down + gamma_up + 2.0 * s);
}

double rabi_frequency_from_trace(const std::vector<double>& times,
                                 const std::vector<double>& p_e) {
    if (times.size() != p_e.size() || times.size() < 3)
        throw std::invalid_argument("rabi_frequency_from_trace: bad trace");
    const double p_max = *std::max_element(p_e.begin(), p_e.end());
    const double target = 0.5 * p_max;
    for (std::size_t i = 1; i < p_e.size(); ++i) {
        if (p_e[i] >= target) {
            const double f = (target - p_e[i - 1]) / (p_e[i] - p_e[i - 1]);
            const double t_half = times[i - 1] + f * (times[i] - times[i - 1]);
            // p_e = sin^2(Omega t / 2) reaches half max at Omega t / 2 = pi/4.
            return std::numbers::pi / (2.0 * t_half);
        }
    }
    throw std::invalid_argument("rabi_frequency_from_trace: no half-maximum crossing");
}

double dressed_transition(const ComplexMatrix& h_static, int n_max, int q_initial,
                          int n_initial, int q_final, int n_final) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_static);
    const auto& vectors = es.eigenvectors();
    auto assigned_level = [&](int q, int n) {
        const Eigen::Index bare = Eigen::Index(q) * (n_max + 1) + n;
        Eigen::Index best = 0;
        double best_overlap = 0.0;
        for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
            const double overlap = std::abs(vectors(bare, k));
            if (overlap > best_overlap) {
                best_overlap = overlap;
                best = k;
            }
        }
        return best;
    };
    return es.eigenvalues()(assigned_level(q_final, n_final)) -
           es.eigenvalues()(assigned_level(q_initial, n_initial));
}

ComplexVector coherent_state(std::complex<double> alpha, int n_max) {
    ComplexVector v(n_max + 1);
    std::complex<double> amp{1.0, 0.0};
    v(0) = amp;
    for (int n = 1; n <= n_max; ++n) {
        amp *= alpha / std::sqrt(double(n));
        v(n) = amp;
    }
    v *= std::exp(-0.5 * std::norm(alpha));
    v.normalize(); // absorb the truncated tail
    return v;
}

ComplexMatrix qubit_ground_density() {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(1, 1) = 1.0;
    return rho;
}

ComplexMatrix qubit_excited_density() {
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    return rho;
}

ComplexMatrix product_density(const ComplexVector& qubit, const ComplexVector& resonator) {
    ComplexVector full(qubit.size() * resonator.size());
    for (Eigen::Index q = 0; q < qubit.size(); ++q)
        for (Eigen::Index n = 0; n < resonator.size(); ++n)
            full(q * resonator.size() + n) = qubit(q) * resonator(n);
    return full * full.adjoint();
}

double trace_real(const ComplexMatrix& rho) { return rho.trace().real(); }

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

} // namespace paritysim::dynamics
