// dynamics.hpp — Open-system propagation of the double-well master equation

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wellgrade/model.hpp"
#include "wellgrade/phasespace.hpp"
#include "wellgrade/sta.hpp"

namespace wellgrade::dynamics {

using model::ProtocolSpec;
using model::SystemSpec;
using spin::SpinBasis;

// Bath parameters. gamma_x and gamma_p are derived:
//   gamma_x = gamma m kB T / hbar^2,   gamma_p = gamma / (16 m kB T).
struct EnvironmentSpec {
    double gamma = 0.0;
    double lambda = 0.0;
    double temperature = 1.0;
    double mass = 1.0;
    double hbar = 1.0;

    double gamma_x() const { return gamma * mass * temperature / (hbar * hbar); }
    double gamma_p() const { return gamma / (16.0 * mass * temperature); }
    bool closed() const { return gamma == 0.0 && lambda == 0.0; }
    void validate() const;

    phasespace::EnvironmentCoefficients phase_coefficients() const {
        return {gamma, lambda, temperature, mass, hbar};
    }
};

struct NumericsSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    double max_step = 0.0;       // 0: tau / 50
    double min_step = 1e-12;
    int sample_stride = 200;     // accepted steps between observable samples
    double max_sample_dt = 0.0;  // 0: tau / 200; upper bound on sample spacing
    int hermitize_every = 25;    // steps between rho <- (rho + rho^dag)/2
    int n_theta = 0;             // sphere grid sizes; 0 chooses the defaults
    int n_phi = 0;
    double q_floor = 1e-14;
    bool store_states = false;   // keep stride-thinned density matrices
    bool phase_space_observables = true;
    int cd_scan_points = 4001;   // coarse nodes of the CD cost prescan

    void validate() const;
};

// Time series gathered along one propagation. All per-sample arrays share
// times' length.
struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> energy_h0;     // <H0(t)>
    std::vector<double> energy_sys;    // <H(t)> including the CD term
    std::vector<double> energy_sys_var;
    std::vector<double> transfer;      // P(x <= 0)
    std::vector<double> wehrl;
    std::vector<double> entropy_vn;
    std::vector<double> pi_rate;
    std::vector<double> phi_rate;
    std::vector<double> coherence_l1;
    std::vector<double> gen_norm_hs;   // ||L[rho_t]||_hs
    std::vector<double> gen_norm_op;
    std::vector<double> gen_norm_tr;
    std::vector<double> sta_norm;      // ||H_STA(t)||_hs (0 without CD)
    std::vector<double> purity;
    std::vector<double> min_eigenvalue;
    std::vector<double> husimi_norm;
    std::vector<Matrix> states;        // only when store_states

    Matrix initial_state;
    Matrix final_state;
    double tau = 0.0;
    double sigma_ir = 0.0;           // trapezoid of pi_rate
    double hs_norm_integral = 0.0;   // per-step trapezoid of ||L[rho]||_hs
    double max_trace_drift = 0.0;    // per accepted step, before renormalization
    double min_eigenvalue_seen = 0.0;
    long accepted_steps = 0;
    long rejected_steps = 0;
    long rhs_evaluations = 0;
};

// Right-hand side of the master equation at one instant:
//   L[rho] = -(i/hbar)[H, rho] - Lambda [x,[x,rho]] - (i gamma/2hbar)[x,{p,rho}]
//            - gamma_x [x,[x,rho]] - gamma_p [p,[p,rho]].
Matrix generator(const Matrix& rho, const Matrix& hamiltonian, const EnvironmentSpec& env,
                 const SpinBasis& basis);

double generator_hs_norm(const Matrix& rho, const Matrix& hamiltonian,
                         const EnvironmentSpec& env, const SpinBasis& basis);

// Adaptive Dormand-Prince 5(4) propagation from t = 0 to tau. With use_sta
// the drive is H0(t) + H_STA(t); the CD term is evaluated exactly per stage
// and a prescanned cost profile caps the step size so the narrow CD
// resonance at the level crossing cannot be stepped over.
TrajectoryRecord propagate(const Matrix& rho0, const SystemSpec& system,
                           const ProtocolSpec& protocol, const EnvironmentSpec& env,
                           const SpinBasis& basis, const NumericsSpec& numerics,
                           bool use_sta);

} // namespace wellgrade::dynamics
