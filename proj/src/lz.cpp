// lz.cpp — Landau-Zener propagation with and without counter-diabatic driving

#include "wellgrade/lz.hpp"

#include <cmath>

#include "wellgrade/errors.hpp"

namespace wellgrade::lz {

namespace {

Vector ground_state(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    return es.eigenvectors().col(0);
}

} // namespace

void LZSpec::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("LZSpec: Delta must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("LZSpec: tau must be > 0");
}

Matrix lz_hamiltonian(const LZSpec& spec, double t) {
    const double g = spec.g(t);
    Matrix h(2, 2);
    h << spec.delta, g, g, -spec.delta;
    return h;
}

Matrix lz_cd(const LZSpec& spec, double t) {
    const double g = spec.g(t);
    const double coeff = -spec.g_dot() * spec.delta /
                         (2.0 * (spec.delta * spec.delta + g * g));
    Matrix h(2, 2);
    h << 0.0, Complex(0.0, -coeff), Complex(0.0, coeff), 0.0;
    return h;
}

LZResult lz_run(const LZSpec& spec) {
    spec.validate();
    auto h_total = [&](double t) {
        Matrix h = lz_hamiltonian(spec, t);
        if (spec.with_cd) h += lz_cd(spec, t);
        return h;
    };
    auto rhs = [&](double t, const Vector& psi) -> Vector {
        return Complex(0.0, -1.0 / spec.hbar) * (h_total(t) * psi);
    };

    Vector psi = ground_state(lz_hamiltonian(spec, 0.0));
    double min_fid = 1.0;

    // classic RK4 with a conservative fixed step; the two-level problem is
    // cheap enough that adaptivity buys nothing
    const double h_scale = std::sqrt(spec.delta * spec.delta + std::max(spec.g0 * spec.g0, spec.g1 * spec.g1));
    double dt = std::min(spec.tau / 2000.0, 0.02 / h_scale);
    const long steps = std::max(2000L, static_cast<long>(std::ceil(spec.tau / dt)));
    dt = spec.tau / steps;

    const long check_stride = std::max(1L, steps / 4000);
    for (long s = 0; s < steps; ++s) {
        const double t = s * dt;
        Vector k1 = rhs(t, psi);
        Vector k2 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k1);
        Vector k3 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k2);
        Vector k4 = rhs(t + dt, psi + dt * k3);
        psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        psi.normalize();
        if (s % check_stride == 0 || s + 1 == steps) {
            Vector gs = ground_state(lz_hamiltonian(spec, t + dt));
            min_fid = std::min(min_fid, std::norm(gs.dot(psi)));
        }
    }

    LZResult res;
    Vector gs = ground_state(lz_hamiltonian(spec, spec.tau));
    res.final_fidelity = std::norm(gs.dot(psi));
    res.min_fidelity = min_fid;
    Matrix sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    res.final_sigma_x = (psi.adjoint() * sx * psi)(0, 0).real();
    return res;
}

} // namespace wellgrade::lz
