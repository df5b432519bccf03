// metrics.hpp — Fidelity, quantum-speed-limit bounds, and the protocol grading

#pragma once

#include <limits>

#include "wellgrade/dynamics.hpp"

namespace wellgrade::metrics {

using dynamics::EnvironmentSpec;
using dynamics::TrajectoryRecord;
using model::SystemSpec;
using spin::SpinBasis;

// Uhlmann fidelity tr{sqrt(sqrt(rho1) rho2 sqrt(rho1))}^2 in [0, 1].
double fidelity(const Matrix& rho1, const Matrix& rho2);

// arccos(sqrt(F)) in [0, pi/2].
double bures_angle(const Matrix& rho1, const Matrix& rho2);

struct ClosedBounds {
    double mandelstam_tamm = 0.0;
    double margolus_levitin = 0.0;
};

// Closed-dynamics speed limits from the time-averaged mean energy and energy
// variance of the trajectory (diagnostics; the grading uses the generalized
// Hilbert-Schmidt bound). A vanishing variance reports +inf.
ClosedBounds qsl_closed_bounds(const TrajectoryRecord& trajectory, double hbar = 1.0);

struct QslReport {
    double tau_qsl = 0.0;
    double hs_ratio = 0.0;      // Lambda_hs / sin^2(Bures)
    double lambda_hs = 0.0;     // time-averaged ||L[rho]||_hs
    double lambda_op = 0.0;
    double lambda_tr = 0.0;
    double sin2_bures = 0.0;
    bool degenerate_endpoints = false; // Bures angle below 1e-8
};

// tau_QSL = (hbar / Lambda_hs) sin^2 L(rho_i, rho_f). The HS average uses the
// per-step integral accumulated during propagation (the stride-sampled series
// misses the narrow CD spike); the op- and trace-norm averages are diagnostic
// trapezoids over the samples.
QslReport tau_qsl(const TrajectoryRecord& trajectory, const Matrix& rho_i,
                  const Matrix& rho_f, double hbar = 1.0);

struct GradingReport {
    double g_s = 0.0;
    double g_q = 0.0;
    double g_t = 0.0;
    double grading = 0.0; // G = g_s g_q g_t
    double sigma_ir = 0.0;
    double tau = 0.0;
    double tau_qsl = 0.0;
    double hs_ratio = 0.0;
    double transfer_pct = 0.0;
    ClosedBounds closed_bounds;
    double lambda_op = 0.0, lambda_hs = 0.0, lambda_tr = 0.0;
    double mean_energy_avg = 0.0;
    double energy_var_avg = 0.0;
    bool degenerate_endpoints = false;
};

// Full grading: g_s = max{0, 1 - 0.1 log10(tau/tau_QSL)}, g_q = F(rho_f,
// rho_target), g_t = exp(-Sigma_ir), G = g_s g_q g_t.
GradingReport grade(const TrajectoryRecord& trajectory, const Matrix& rho_target,
                    const SpinBasis& basis);

// g_s alone from the ratio tau/tau_QSL (clamped at 0 beyond 1e10).
double speed_grade(double tau, double tau_qsl);

// P(x <= 0) through the spectral projector of x' onto nonpositive eigenvalues.
double transfer_percentage(const Matrix& rho, const SpinBasis& basis);

// Sum of |off-diagonals| of rho in the x' eigenbasis.
double coherence_l1(const Matrix& rho, const SpinBasis& basis);

// tau_dec = hbar^2 / (gamma m kB T dx^2); dx defaults to the distance between
// the two minima. gamma = 0 reports +inf.
double decoherence_time(const EnvironmentSpec& env, const SystemSpec& system,
                        double delta_x = 0.0);

} // namespace wellgrade::metrics
