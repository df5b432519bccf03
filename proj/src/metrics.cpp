// metrics.cpp — State comparison and protocol grading

#include "wellgrade/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "wellgrade/errors.hpp"

namespace wellgrade::metrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trapezoid_average(const std::vector<double>& t, const std::vector<double>& f) {
    if (t.size() < 2) return f.empty() ? 0.0 : f.front();
    double acc = 0.0;
    for (size_t k = 1; k < t.size(); ++k) {
        acc += 0.5 * (t[k] - t[k - 1]) * (f[k] + f[k - 1]);
    }
    return acc / (t.back() - t.front());
}

} // namespace

double fidelity(const Matrix& rho1, const Matrix& rho2) {
    if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
        throw InvalidDimension("fidelity: dimension mismatch");
    }
    const Matrix root = psd_sqrt(rho1);
    Matrix inner = root * rho2 * root;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(inner), Eigen::EigenvaluesOnly);
    double acc = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        acc += std::sqrt(std::max(0.0, es.eigenvalues()[i]));
    }
    return std::clamp(acc * acc, 0.0, 1.0);
}

double bures_angle(const Matrix& rho1, const Matrix& rho2) {
    return std::acos(std::clamp(std::sqrt(fidelity(rho1, rho2)), 0.0, 1.0));
}

ClosedBounds qsl_closed_bounds(const TrajectoryRecord& trajectory, double hbar) {
    ClosedBounds b;
    const double angle = bures_angle(trajectory.initial_state, trajectory.final_state);
    const double e_avg = trapezoid_average(trajectory.times, trajectory.energy_sys);
    std::vector<double> dev(trajectory.energy_sys_var.size());
    for (size_t k = 0; k < dev.size(); ++k) dev[k] = std::sqrt(trajectory.energy_sys_var[k]);
    const double de_avg = trapezoid_average(trajectory.times, dev);
    b.mandelstam_tamm = (de_avg > 0.0) ? hbar * angle / de_avg : (angle > 0.0 ? kInf : 0.0);
    b.margolus_levitin = (e_avg > 0.0) ? 2.0 * hbar * angle * angle / (M_PI * e_avg)
                                       : (angle > 0.0 ? kInf : 0.0);
    return b;
}

QslReport tau_qsl(const TrajectoryRecord& trajectory, const Matrix& rho_i,
                  const Matrix& rho_f, double hbar) {
    QslReport rep;
    const double angle = bures_angle(rho_i, rho_f);
    rep.sin2_bures = std::sin(angle) * std::sin(angle);
    rep.degenerate_endpoints = angle < 1e-8;

    rep.lambda_hs = trajectory.hs_norm_integral / trajectory.tau;
    rep.lambda_op = trapezoid_average(trajectory.times, trajectory.gen_norm_op);
    rep.lambda_tr = trapezoid_average(trajectory.times, trajectory.gen_norm_tr);

    if (rep.lambda_hs > 0.0) {
        rep.tau_qsl = hbar / rep.lambda_hs * rep.sin2_bures;
        rep.hs_ratio = rep.lambda_hs / std::max(rep.sin2_bures, 1e-300);
    } else {
        rep.tau_qsl = kInf; // frozen generator; flagged for the caller
        rep.hs_ratio = 0.0;
    }
    return rep;
}

double speed_grade(double tau, double tau_qsl) {
    if (!(tau_qsl > 0.0)) return 0.0;
    if (std::isinf(tau_qsl)) return 1.0;
    const double ratio = tau / tau_qsl;
    if (ratio >= 1e10) return 0.0;
    return std::max(0.0, 1.0 - 0.1 * std::log10(ratio));
}

GradingReport grade(const TrajectoryRecord& trajectory, const Matrix& rho_target,
                    const SpinBasis& basis) {
    GradingReport rep;
    rep.tau = trajectory.tau;
    rep.sigma_ir = trajectory.sigma_ir;

    QslReport qsl = tau_qsl(trajectory, trajectory.initial_state, trajectory.final_state,
                            basis.hbar);
    rep.tau_qsl = qsl.tau_qsl;
    rep.hs_ratio = qsl.hs_ratio;
    rep.lambda_hs = qsl.lambda_hs;
    rep.lambda_op = qsl.lambda_op;
    rep.lambda_tr = qsl.lambda_tr;
    rep.degenerate_endpoints = qsl.degenerate_endpoints;

    rep.g_s = speed_grade(trajectory.tau, qsl.tau_qsl);
    rep.g_q = fidelity(trajectory.final_state, rho_target);
    rep.g_t = std::exp(-trajectory.sigma_ir);
    rep.grading = rep.g_s * rep.g_q * rep.g_t;
    rep.transfer_pct = transfer_percentage(trajectory.final_state, basis);

    rep.closed_bounds = qsl_closed_bounds(trajectory, basis.hbar);
    rep.mean_energy_avg = trapezoid_average(trajectory.times, trajectory.energy_sys);
    std::vector<double> dev(trajectory.energy_sys_var.size());
    for (size_t k = 0; k < dev.size(); ++k) dev[k] = std::sqrt(trajectory.energy_sys_var[k]);
    rep.energy_var_avg = trapezoid_average(trajectory.times, dev);
    return rep;
}

double transfer_percentage(const Matrix& rho, const SpinBasis& basis) {
    double acc = 0.0;
    for (int k = 0; k < basis.dim; ++k) {
        if (basis.x_eigenvalues[k] > 0.0) continue;
        const Vector u = basis.x_eigenvectors.col(k).cast<Complex>();
        acc += (u.dot(rho * u)).real();
    }
    return acc;
}

double coherence_l1(const Matrix& rho, const SpinBasis& basis) {
    const Matrix u = basis.x_eigenvectors.cast<Complex>();
    const Matrix in_x = u.transpose() * rho * u;
    double acc = 0.0;
    for (int j = 0; j < in_x.cols(); ++j) {
        for (int i = 0; i < in_x.rows(); ++i) {
            if (i != j) acc += std::abs(in_x(i, j));
        }
    }
    return acc;
}

double decoherence_time(const EnvironmentSpec& env, const SystemSpec& system,
                        double delta_x) {
    if (delta_x <= 0.0) delta_x = 2.0 * system.well_position();
    if (env.gamma <= 0.0) return kInf;
    return env.hbar * env.hbar /
           (env.gamma * env.mass * env.temperature * delta_x * delta_x);
}

} // namespace wellgrade::metrics
