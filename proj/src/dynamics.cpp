// dynamics.cpp — Master-equation generator and adaptive Dormand-Prince propagation

#include "wellgrade/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "wellgrade/errors.hpp"
#include "wellgrade/kernels.hpp"

namespace wellgrade::dynamics {

namespace {

kern::DissipatorCoefficients dissipator_coefficients(const EnvironmentSpec& env) {
    kern::DissipatorCoefficients c;
    c.lambda = env.lambda;
    c.gamma = env.gamma;
    c.gamma_x = env.gamma_x();
    c.gamma_p = env.gamma_p();
    c.hbar = env.hbar;
    return c;
}

void generator_into(const RealVector& ladder, const Matrix& h, int bandwidth,
                    const kern::DissipatorCoefficients& coeffs, double hbar,
                    const Matrix& rho, Matrix& out, Matrix& w1, Matrix& w2, Matrix& w3) {
    kern::commutator_h(h, bandwidth, rho, out, w1);
    out *= Complex(0.0, -1.0 / hbar);
    if (!coeffs.closed()) {
        kern::dissipative_generator(ladder, coeffs, rho, w3, w1, w2);
        out += w3;
    }
}

// Exact counter-diabatic term through the real-symmetric eigenproblem of
// H0(t). H_STA = i * M with M real antisymmetric, so only real products
// appear.
class CdEvaluator {
  public:
    CdEvaluator(const SpinBasis& basis, const SystemSpec& system, const ProtocolSpec& protocol,
                const model::HamiltonianTerms& terms, double gap_floor)
        : basis_(basis), protocol_(protocol), terms_(terms), gap_floor_(gap_floor),
          x_real_(basis.x_op.real()) {
        (void)system;
    }

    // H_STA(t) and its Hilbert-Schmidt norm; memoized on recent stage times.
    const Matrix& at(double t, double* norm_out = nullptr) {
        for (const Slot& s : memo_) {
            if (s.valid && s.t == t) {
                if (norm_out) *norm_out = s.norm;
                return s.h_sta;
            }
        }
        Slot& slot = memo_[next_];
        next_ = (next_ + 1) % memo_.size();
        compute(t, slot);
        if (norm_out) *norm_out = slot.norm;
        return slot.h_sta;
    }

  private:
    struct Slot {
        bool valid = false;
        double t = -1.0;
        double norm = 0.0;
        Matrix h_sta;
    };

    void compute(double t, Slot& slot) {
        Matrix h0 = model::build_hamiltonian(terms_, basis_, protocol_, t);
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(h0.real());
        const RealVector& e = es.eigenvalues();
        const RealMatrix& v = es.eigenvectors();
        const double a_dot = model::control_alpha_dot(protocol_, t);
        const int n = basis_.dim;

        RealMatrix x_eig = v.transpose() * x_real_ * v;
        RealMatrix core(n, n);
        for (int i = 0; i < n; ++i) {
            core(i, i) = 0.0;
            for (int j = i + 1; j < n; ++j) {
                const double gap = e[j] - e[i];
                const double w = basis_.hbar * a_dot * x_eig(i, j);
                if (std::abs(gap) <= gap_floor_) {
                    if (std::abs(w) > 1e-12) {
                        throw DegenerateGap("propagate: degenerate coupled pair (" +
                                            std::to_string(i) + "," + std::to_string(j) +
                                            ") at t = " + std::to_string(t));
                    }
                    core(i, j) = core(j, i) = 0.0;
                    continue;
                }
                core(i, j) = w / gap;
                core(j, i) = -core(i, j);
            }
        }
        RealMatrix m = v * core * v.transpose();
        slot.h_sta = Complex(0.0, 1.0) * m.cast<Complex>();
        slot.norm = m.norm();
        slot.t = t;
        slot.valid = true;
    }

    const SpinBasis& basis_;
    const ProtocolSpec& protocol_;
    const model::HamiltonianTerms& terms_;
    double gap_floor_;
    RealMatrix x_real_;
    std::array<Slot, 8> memo_;
    size_t next_ = 0;
};

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

class Propagator {
  public:
    Propagator(const Matrix& rho0, const SystemSpec& system, const ProtocolSpec& protocol,
               const EnvironmentSpec& env, const SpinBasis& basis, const NumericsSpec& num,
               bool use_sta)
        : system_(system), protocol_(protocol), env_(env), basis_(basis), num_(num),
          use_sta_(use_sta), coeffs_(dissipator_coefficients(env)),
          terms_(model::hamiltonian_terms(basis, system, protocol)) {
        const int n = basis.dim;
        y_ = rho0;
        for (Matrix* m : {&h_buf_, &h0_buf_, &w1_, &w2_, &w3_, &ytmp_, &y5_, &err_}) {
            m->resize(n, n);
        }
        for (auto& k : k_) k.resize(n, n);
        dense_h_ = terms_.has_flatten || use_sta_;
        if (use_sta_) {
            cd_ = std::make_unique<CdEvaluator>(basis, system, protocol, terms_, 1e-13);
            scan_ = std::make_unique<sta::CdScan>(
                sta::CdScan::build(basis, system, protocol, num.cd_scan_points));
        }
        // left-side projector of x' and its eigenbasis for l1-coherence
        RealMatrix proj = RealMatrix::Zero(n, n);
        for (int k = 0; k < n; ++k) {
            if (basis.x_eigenvalues[k] <= 0.0) {
                proj.noalias() += basis.x_eigenvectors.col(k) * basis.x_eigenvectors.col(k).transpose();
            }
        }
        left_projector_ = proj;
        grid_ = phasespace::sphere_grid(n, num.n_theta, num.n_phi);
    }

    TrajectoryRecord run();

  private:
    // H(t) into h_buf_; returns effective bandwidth (-1 for dense)
    int assemble_h(double t, bool with_cd, double* sta_norm = nullptr) {
        Matrix& h = with_cd ? h_buf_ : h0_buf_;
        h = terms_.h_static;
        const model::ControlValues c = model::control_values(protocol_, t);
        const int n = basis_.dim;
        for (int k = 0; k + 1 < n; ++k) {
            h(k, k + 1) += c.alpha * basis_.ladder[k];
            h(k + 1, k) += c.alpha * basis_.ladder[k];
        }
        if (terms_.has_flatten && c.beta != 0.0) h += c.beta * terms_.flatten;
        if (with_cd && use_sta_) {
            double norm = 0.0;
            h += cd_->at(t, &norm);
            if (sta_norm) *sta_norm = norm;
        } else if (sta_norm) {
            *sta_norm = 0.0;
        }
        return dense_h_ ? -1 : terms_.bandwidth;
    }

    void rhs(double t, const Matrix& y, Matrix& out) {
        const int bw = assemble_h(t, true);
        generator_into(basis_.ladder, h_buf_, bw, coeffs_, env_.hbar, y, out, w1_, w2_, w3_);
        ++rhs_evals_;
    }

    double error_norm(const Matrix& y_old, const Matrix& y_new, const Matrix& err) const {
        const double atol = num_.abs_tol, rtol = num_.rel_tol;
        double acc = 0.0;
        const auto* e = err.data();
        const auto* a = y_old.data();
        const auto* b = y_new.data();
        const Eigen::Index m = err.size();
        for (Eigen::Index i = 0; i < m; ++i) {
            const double sc = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
            const double r = std::abs(e[i]) / sc;
            acc += r * r;
        }
        return std::sqrt(acc / m);
    }

    // cap the step so h * max ||H_STA|| over [t, t+h] stays below nu*hbar
    double cd_ceiling(double t, double h) const {
        if (!scan_) return h;
        const double budget = 0.5 * basis_.hbar;
        for (int iter = 0; iter < 64; ++iter) {
            const double m = scan_->max_cost_on(t, t + h);
            if (m * h <= budget || h <= 4.0 * num_.min_step) return h;
            h = std::min(0.5 * h, budget / m);
        }
        return h;
    }

    const SystemSpec& system_;
    const ProtocolSpec& protocol_;
    const EnvironmentSpec& env_;
    const SpinBasis& basis_;
    const NumericsSpec& num_;
    bool use_sta_;
    bool dense_h_ = false;
    kern::DissipatorCoefficients coeffs_;
    model::HamiltonianTerms terms_;
    std::unique_ptr<CdEvaluator> cd_;
    std::unique_ptr<sta::CdScan> scan_;
    RealMatrix left_projector_;
    phasespace::SphereGrid grid_;

    Matrix y_, h_buf_, h0_buf_, w1_, w2_, w3_, ytmp_, y5_, err_;
    std::array<Matrix, 7> k_;
    long rhs_evals_ = 0;

    void sample(TrajectoryRecord& rec, double t, const Matrix& gen_at_t, double sta_norm);
};

void Propagator::sample(TrajectoryRecord& rec, double t, const Matrix& gen_at_t,
                        double sta_norm) {
    const int n = basis_.dim;
    rec.times.push_back(t);

    assemble_h(t, false);
    const double e_h0 = (y_.cwiseProduct(h0_buf_.transpose())).sum().real();
    rec.energy_h0.push_back(e_h0);

    assemble_h(t, true);
    w1_.noalias() = h_buf_ * y_;
    const double e_sys = w1_.trace().real();
    const double e_sys2 = (h_buf_.cwiseProduct(w1_.transpose())).sum().real();
    rec.energy_sys.push_back(e_sys);
    rec.energy_sys_var.push_back(std::max(0.0, e_sys2 - e_sys * e_sys));
    rec.sta_norm.push_back(sta_norm);

    rec.transfer.push_back(
        (y_.real().cwiseProduct(left_projector_)).sum());

    rec.purity.push_back(y_.squaredNorm());

    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(y_), Eigen::EigenvaluesOnly);
        const RealVector& lam = es.eigenvalues();
        rec.min_eigenvalue.push_back(lam.minCoeff());
        double svn = 0.0;
        for (int i = 0; i < n; ++i) {
            if (lam[i] > 0.0) svn -= lam[i] * std::log(lam[i]);
        }
        rec.entropy_vn.push_back(svn);
    }

    {
        // l1 coherence in the x' eigenbasis
        w1_.noalias() = y_ * basis_.x_eigenvectors.cast<Complex>();
        w2_.noalias() = basis_.x_eigenvectors.transpose().cast<Complex>() * w1_;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                if (i != j) acc += std::abs(w2_(i, j));
            }
        }
        rec.coherence_l1.push_back(acc);
    }

    {
        rec.gen_norm_hs.push_back(gen_at_t.norm());
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(gen_at_t), Eigen::EigenvaluesOnly);
        rec.gen_norm_op.push_back(es.eigenvalues().cwiseAbs().maxCoeff());
        rec.gen_norm_tr.push_back(es.eigenvalues().cwiseAbs().sum());
    }

    if (num_.phase_space_observables) {
        phasespace::EntropyRates rates = phasespace::entropy_rates(
            y_, grid_, basis_, env_.phase_coefficients(), num_.q_floor);
        rec.wehrl.push_back(rates.wehrl);
        rec.pi_rate.push_back(rates.pi);
        rec.phi_rate.push_back(rates.phi);
        rec.husimi_norm.push_back(rates.husimi_norm);
    }

    if (num_.store_states) rec.states.push_back(hermitized(y_));
}

TrajectoryRecord Propagator::run() {
    const double tau = protocol_.tau;
    const double max_step = (num_.max_step > 0.0) ? num_.max_step : tau / 50.0;
    const double max_sample_dt =
        (num_.max_sample_dt > 0.0) ? num_.max_sample_dt : tau / 200.0;

    TrajectoryRecord rec;
    rec.tau = tau;
    rec.initial_state = y_;

    // schedule kinks of the classical ramps; steps do not straddle them
    std::vector<double> kinks;
    if (!model::is_quantum(protocol_.kind)) {
        kinks.push_back(protocol_.ramp_fraction * tau);
    }

    double t = 0.0;
    double h = std::min({max_step, tau / 1000.0});
    h = cd_ceiling(t, h);

    double sta_norm = 0.0;
    assemble_h(t, true, &sta_norm);
    rhs(t, y_, k_[0]);
    sample(rec, t, k_[0], sta_norm);

    long steps_since_sample = 0;
    double t_last_sample = 0.0;
    bool fsal_valid = true;

    while (t < tau) {
        if (h < num_.min_step && tau - t > 16.0 * num_.min_step) {
            throw StepUnderflow("propagate: step size " + std::to_string(h) +
                                " fell below min_step at t = " + std::to_string(t) +
                                "; the CD resonance near tau/2 may need tighter tolerances");
        }
        h = std::min(h, tau - t);
        for (double kink : kinks) {
            if (t < kink - 1e-14 * tau && t + h > kink) h = kink - t;
        }
        h = cd_ceiling(t, h);

        if (!fsal_valid) rhs(t, y_, k_[0]);

        ytmp_ = y_ + (h * kA21) * k_[0];
        rhs(t + kC[1] * h, ytmp_, k_[1]);
        ytmp_ = y_ + h * (kA31 * k_[0] + kA32 * k_[1]);
        rhs(t + kC[2] * h, ytmp_, k_[2]);
        ytmp_ = y_ + h * (kA41 * k_[0] + kA42 * k_[1] + kA43 * k_[2]);
        rhs(t + kC[3] * h, ytmp_, k_[3]);
        ytmp_ = y_ + h * (kA51 * k_[0] + kA52 * k_[1] + kA53 * k_[2] + kA54 * k_[3]);
        rhs(t + kC[4] * h, ytmp_, k_[4]);
        ytmp_ = y_ + h * (kA61 * k_[0] + kA62 * k_[1] + kA63 * k_[2] + kA64 * k_[3] +
                          kA65 * k_[4]);
        rhs(t + kC[5] * h, ytmp_, k_[5]);
        y5_ = y_ + h * (kB1 * k_[0] + kB3 * k_[2] + kB4 * k_[3] + kB5 * k_[4] + kB6 * k_[5]);
        double sta_norm_new = 0.0;
        assemble_h(t + h, true, &sta_norm_new);
        rhs(t + h, y5_, k_[6]);
        err_ = h * (kE1 * k_[0] + kE3 * k_[2] + kE4 * k_[3] + kE5 * k_[4] + kE6 * k_[5] +
                    kE7 * k_[6]);

        const double err = error_norm(y_, y5_, err_);
        if (err <= 1.0) {
            const double hs_before = k_[0].norm();
            const double hs_after = k_[6].norm();
            rec.hs_norm_integral += 0.5 * h * (hs_before + hs_after);

            t += h;
            if (tau - t <= 1e-14 * tau) t = tau;
            y_.swap(y5_);
            k_[0].swap(k_[6]); // FSAL
            fsal_valid = true;
            ++rec.accepted_steps;
            ++steps_since_sample;

            const double tr = y_.trace().real();
            rec.max_trace_drift = std::max(rec.max_trace_drift, std::abs(tr - 1.0));
            y_ /= tr;
            k_[0] /= tr; // the generator is linear, so FSAL survives the rescale
            if (num_.hermitize_every > 0 &&
                rec.accepted_steps % num_.hermitize_every == 0) {
                y_ = hermitized(y_);
                fsal_valid = false;
            }

            const bool due = steps_since_sample >= num_.sample_stride ||
                             (t - t_last_sample) >= max_sample_dt || t >= tau;
            if (due) {
                sample(rec, t, k_[0], sta_norm_new);
                steps_since_sample = 0;
                t_last_sample = t;
                const double min_eig = rec.min_eigenvalue.back();
                rec.min_eigenvalue_seen = std::min(rec.min_eigenvalue_seen, min_eig);
                if (min_eig < -1e-2) {
                    throw PositivityLoss("propagate: min eigenvalue " +
                                         std::to_string(min_eig) + " at t = " +
                                         std::to_string(t));
                }
            }

            double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
            h = std::min(h, max_step);
        } else {
            ++rec.rejected_steps;
            fsal_valid = true; // k1 still matches (t, y)
            const double factor = std::max(0.2, 0.9 * std::pow(err, -0.2));
            h *= factor;
        }
    }

    rec.final_state = hermitized(y_);
    rec.rhs_evaluations = rhs_evals_;
    if (!rec.pi_rate.empty() && rec.times.size() >= 2) {
        rec.sigma_ir = phasespace::accumulate_sigma(rec.times, rec.pi_rate);
    }
    return rec;
}

} // namespace

void EnvironmentSpec::validate() const {
    if (gamma < 0.0) throw std::invalid_argument("EnvironmentSpec: gamma must be >= 0");
    if (lambda < 0.0) throw std::invalid_argument("EnvironmentSpec: lambda must be >= 0");
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("EnvironmentSpec: temperature must be > 0");
    }
    if (!(mass > 0.0)) throw std::invalid_argument("EnvironmentSpec: mass must be > 0");
}

void NumericsSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw std::invalid_argument("NumericsSpec: tolerances must be > 0");
    }
    if (!(min_step > 0.0)) throw std::invalid_argument("NumericsSpec: min_step must be > 0");
    if (max_step != 0.0 && max_step <= min_step) {
        throw std::invalid_argument("NumericsSpec: max_step must exceed min_step");
    }
    if (sample_stride < 1) {
        throw std::invalid_argument("NumericsSpec: sample_stride must be >= 1");
    }
}

Matrix generator(const Matrix& rho, const Matrix& hamiltonian, const EnvironmentSpec& env,
                 const SpinBasis& basis) {
    const int n = basis.dim;
    if (rho.rows() != n || hamiltonian.rows() != n) {
        throw InvalidDimension("generator: dimension mismatch with basis");
    }
    Matrix out(n, n), w1(n, n), w2(n, n), w3(n, n);
    generator_into(basis.ladder, hamiltonian, -1, dissipator_coefficients(env), env.hbar,
                   rho, out, w1, w2, w3);
    return out;
}

double generator_hs_norm(const Matrix& rho, const Matrix& hamiltonian,
                         const EnvironmentSpec& env, const SpinBasis& basis) {
    return generator(rho, hamiltonian, env, basis).norm();
}

TrajectoryRecord propagate(const Matrix& rho0, const SystemSpec& system,
                           const ProtocolSpec& protocol, const EnvironmentSpec& env,
                           const SpinBasis& basis, const NumericsSpec& numerics,
                           bool use_sta) {
    protocol.validate();
    env.validate();
    numerics.validate();
    if (use_sta && !model::is_quantum(protocol.kind)) {
        throw std::invalid_argument("propagate: use_sta requires a quantum protocol kind");
    }
    validate_density_matrix(rho0, 1e-10, 1e-8, 1e-6);
    Propagator prop(rho0, system, protocol, env, basis, numerics, use_sta);
    return prop.run();
}

} // namespace wellgrade::dynamics
