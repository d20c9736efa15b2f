#pragma once

// Brute-force oracle: fixed-step RK4 propagation of the Lindblad master
// equation for the driven, dissipative qubit(-resonator) system, plus
// steady-state extraction and the sideband drive runs.

#include <stdexcept>
#include <vector>

#include "paritysim/model.hpp"

namespace paritysim::dynamics {

using model::CosineTerm;
using model::TimeDependentHamiltonian;
using ops::ComplexMatrix;
using ops::ComplexVector;
using ops::HilbertSpace;

// Numerical invariant violations (trace drift, negativity, Fock truncation
// breach). Non-convergence of the steady-state search is reported separately.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& msg, double drift)
        : std::runtime_error(msg), drift_(drift) {}
    double drift() const { return drift_; }

  private:
    double drift_;
};

struct DecoherenceParams {
    double gamma1 = 0.0;   // energy relaxation 1/T1, rad/s
    double gamma2 = 0.0;   // total dephasing 1/T2, rad/s
    double gamma_up = 0.0; // thermal excitation rate, rad/s (0 = cold bath)

    // Pure dephasing left after the relaxation channels' contribution.
    double gamma_phi() const { return gamma2 - 0.5 * (gamma1 + gamma_up); }
    void validate() const;
};

struct PropagationConfig {
    double dt = 0.0;
    double t_final = 0.0;
    int record_stride = 1;
    double steady_window = 0.1; // fraction of t_final per averaging window
};

// dt = (2pi / omega_fastest) / (50 * oversample); stride sized for a few
// thousand recorded samples.
PropagationConfig propagation_config_for(double omega_fastest, double t_final,
                                         int oversample = 1);

struct TrajectoryResult {
    std::vector<double> times;
    std::vector<double> p_e;
    std::vector<double> n_mean; // empty without a resonator factor
    ComplexMatrix final_state;
};

// Collapse operator L with rate r contributes r (L rho L^ - {L^L, rho}/2).
struct CollapseChannel {
    ComplexMatrix op;
    double rate = 0.0;
};

// sigma_-, sigma_+ and sigma_z channels for the qubit; embedded on the
// product space when n_max > 0.
std::vector<CollapseChannel> qubit_channels(const DecoherenceParams& dec, int n_max = 0);

TrajectoryResult propagate(const TimeDependentHamiltonian& h,
                           const std::vector<CollapseChannel>& channels,
                           const HilbertSpace& space, const ComplexMatrix& rho0,
                           const PropagationConfig& cfg);

struct SteadyStateResult {
    double p_e = 0.0;
    double drift = 0.0; // last window-to-window change
    int windows = 0;
    double t_elapsed = 0.0;
};

// Window-averaged p_e once consecutive window means agree within drift_tol;
// throws ConvergenceError when the time budget runs out first.
SteadyStateResult steady_state_pe(const TimeDependentHamiltonian& h,
                                  const std::vector<CollapseChannel>& channels,
                                  const HilbertSpace& space, const ComplexMatrix& rho0,
                                  const PropagationConfig& cfg, double drift_tol = 1e-3);

// ---- sideband drive runs ----

struct SidebandRunConfig {
    model::QubitParams qubit;
    model::ResonatorParams resonator;
    model::CouplingParams coupling;
    DecoherenceParams dec;
    double drive_omega = 0.0; // near omega_q ± omega_r
    double omega_l = 0.0;
    double omega_t = 0.0;
    double n_bar_sim = 0.0; // readout population maintained by a resonant tone
    double t_final = 0.0;
    int oversample = 2; // displaced coherent states need the positivity margin
};

// Full eigenbasis system Hamiltonian + embedded qubit drive + resonator
// displacement tone holding <n> near n_bar_sim. Aborts when the topmost
// Fock level's population exceeds 1e-3.
TrajectoryResult sideband_drive_run(const SidebandRunConfig& cfg);

// ---- closed forms and trace utilities (test oracles live on these) ----

// Steady excited-state population of a resonantly/detuned driven two-level
// system with relaxation gamma_down, pumping gamma_up and total coherence
// decay gamma2: (gamma_up + S) / (gamma_down + gamma_up + 2 S) with
// S = (rabi^2/2) gamma2 / (gamma2^2 + detuning^2).
double driven_tls_steady_state(double rabi, double detuning, double gamma_down,
                               double gamma_up, double gamma2);

// Rabi angular frequency from the first half-maximum crossing of p_e(t).
double rabi_frequency_from_trace(const std::vector<double>& times,
                                 const std::vector<double>& p_e);

// Truncated normalized coherent state |alpha>.
ComplexVector coherent_state(std::complex<double> alpha, int n_max);

// Dressed transition angular frequency between the two eigenstates of a
// static Hamiltonian with maximal overlap on the bare states |q_i, n_i> and
// |q_f, n_f> (qubit index 0 = excited). Used to place sideband drives on
// resonance despite dispersive shifts.
double dressed_transition(const ComplexMatrix& h_static, int n_max, int q_initial,
                          int n_initial, int q_final, int n_final);

// Density matrices for common initial states.
ComplexMatrix qubit_ground_density();
ComplexMatrix qubit_excited_density();
ComplexMatrix product_density(const ComplexVector& qubit, const ComplexVector& resonator);

double trace_real(const ComplexMatrix& rho);
double purity(const ComplexMatrix& rho);

} // namespace paritysim::dynamics
