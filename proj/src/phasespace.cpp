// phasespace.cpp — Sphere quadrature, Husimi field, Wehrl entropy, entropy rates

#include "wellgrade/phasespace.hpp"

#include <cmath>
#include <random>
#include <string>

#include "wellgrade/errors.hpp"
#include "wellgrade/kernels.hpp"

namespace wellgrade::phasespace {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] via the Jacobi (Golub-Welsch)
// eigenproblem; exact for polynomials up to degree 2n - 1.
void gauss_legendre(int n, RealVector& nodes, RealVector& weights) {
    RealMatrix jacobi = RealMatrix::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(jacobi);
    nodes = es.eigenvalues();
    weights.resize(n);
    for (int k = 0; k < n; ++k) {
        const double v0 = es.eigenvectors()(0, k);
        weights[k] = 2.0 * v0 * v0;
    }
}

// Shared per-sample pass over the sphere: builds the coherent vectors one
// theta row at a time (the Jy eigenbasis makes each row an O(N^2) job) and
// hands row blocks to a visitor.
template <typename Visitor>
void for_each_theta_row(const SphereGrid& grid, const SpinBasis& basis, Visitor&& visit) {
    const int n = basis.dim;
    const int n_phi = grid.n_phi;
    const Vector w0 = basis.jy_eigenvectors.row(0).adjoint(); // Wd^dag |n=0>

    Matrix v(n, n_phi);
    Vector rotated(n);
    Vector phase_step(n), phase(n);
    for (int it = 0; it < grid.n_theta; ++it) {
        const double theta = grid.theta[it];
        Vector scaled = w0;
        for (int k = 0; k < n; ++k) {
            scaled[k] *= std::exp(Complex(0.0, -theta * basis.jy_eigenvalues[k] / basis.hbar));
        }
        rotated.noalias() = basis.jy_eigenvectors * scaled; // e^{-i theta Jy} |j,j>

        // phi rotation is diagonal: phases e^{-i phi (j - k)}
        const double dphi = 2.0 * M_PI / n_phi;
        for (int k = 0; k < n; ++k) {
            phase_step[k] = std::exp(Complex(0.0, -dphi * (basis.spin - k)));
            phase[k] = 1.0;
        }
        for (int ip = 0; ip < n_phi; ++ip) {
            v.col(ip) = rotated.cwiseProduct(phase);
            phase = phase.cwiseProduct(phase_step);
        }
        visit(it, v);
    }
}

} // namespace

SphereGrid sphere_grid(int basis_dim, int n_theta, int n_phi) {
    if (n_theta <= 0) n_theta = 2 * basis_dim;
    if (n_phi <= 0) n_phi = 4 * basis_dim + 1;
    if (n_theta < 2 || n_phi < 3) {
        throw std::invalid_argument("sphere_grid: need n_theta >= 2 and n_phi >= 3");
    }
    SphereGrid g;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    RealVector u, w;
    gauss_legendre(n_theta, u, w);
    g.theta.resize(n_theta);
    for (int k = 0; k < n_theta; ++k) g.theta[k] = std::acos(u[k]);
    g.theta_weight = w;
    g.phi = RealVector::LinSpaced(n_phi, 0.0, 2.0 * M_PI * (n_phi - 1.0) / n_phi);
    return g;
}

double HusimiField::value(int i_theta, int i_phi) const {
    return q[static_cast<Eigen::Index>(i_theta) * grid->n_phi + i_phi];
}

HusimiField husimi_field(const Matrix& rho, const SphereGrid& grid, const SpinBasis& basis) {
    HusimiField field;
    field.grid = &grid;
    field.q.resize(grid.nodes());
    field.min_raw = 0.0;
    double norm_acc = 0.0;

    Matrix b;
    for_each_theta_row(grid, basis, [&](int it, const Matrix& v) {
        b.noalias() = rho * v;
        const double w = grid.weight(it);
        for (int ip = 0; ip < grid.n_phi; ++ip) {
            double q = v.col(ip).dot(b.col(ip)).real();
            field.min_raw = std::min(field.min_raw, q);
            if (q < 0.0) q = 0.0;
            field.q[static_cast<Eigen::Index>(it) * grid.n_phi + ip] = q;
            norm_acc += w * q;
        }
    });
    field.normalization = basis.dim / (4.0 * M_PI) * norm_acc;
    return field;
}

double wehrl_entropy(const HusimiField& field, int basis_dim) {
    const SphereGrid& grid = *field.grid;
    double acc = 0.0;
    for (int it = 0; it < grid.n_theta; ++it) {
        const double w = grid.weight(it);
        for (int ip = 0; ip < grid.n_phi; ++ip) {
            const double q = field.value(it, ip);
            if (q > 0.0) acc += w * q * std::log(q);
        }
    }
    return -basis_dim / (4.0 * M_PI) * acc;
}

EntropyRates entropy_rates(const Matrix& rho, const SphereGrid& grid, const SpinBasis& basis,
                           const EnvironmentCoefficients& env, double q_floor) {
    kern::DissipatorCoefficients coeffs;
    coeffs.lambda = env.lambda;
    coeffs.gamma = env.gamma;
    coeffs.gamma_x = env.gamma_x();
    coeffs.gamma_p = env.gamma_p();
    coeffs.hbar = env.hbar;

    const int n = basis.dim;
    Matrix dissipative(n, n), w1(n, n), w2(n, n);
    kern::dissipative_generator(basis.ladder, coeffs, rho, dissipative, w1, w2);

    const double pref_x = 0.5 * env.gamma / env.hbar + env.gamma_x() + env.lambda;
    const double pref_p = env.gamma_p();
    const double scale = n / (4.0 * M_PI);

    double acc_x = 0.0, acc_p = 0.0, acc_norm = 0.0, acc_wehrl = 0.0, acc_dsd = 0.0;
    int clamped = 0;

    Matrix b, bd, xv, pv;
    for_each_theta_row(grid, basis, [&](int it, const Matrix& v) {
        b.noalias() = rho * v;
        bd.noalias() = dissipative * v;
        kern::x_left(basis.ladder, v, xv);
        kern::p_left(basis.ladder, v, pv);
        const double w = grid.weight(it);
        for (int ip = 0; ip < grid.n_phi; ++ip) {
            const double q_raw = v.col(ip).dot(b.col(ip)).real();
            const double q = std::max(q_raw, 0.0);
            acc_norm += w * q;
            if (q > 0.0) acc_wehrl += w * q * std::log(q);

            // J_O = <O Omega|rho|Omega> - conj(...) = 2i Im(<O Omega|rho Omega>)
            const Complex zx = xv.col(ip).dot(b.col(ip));
            const Complex zp = pv.col(ip).dot(b.col(ip));
            const double jx2 = 4.0 * zx.imag() * zx.imag();
            const double jp2 = 4.0 * zp.imag() * zp.imag();
            const double q_eff = std::max(q, q_floor);
            if (q < q_floor) ++clamped;
            acc_x += w * jx2 / q_eff;
            acc_p += w * jp2 / q_eff;

            const double q_dot = v.col(ip).dot(bd.col(ip)).real();
            acc_dsd += w * (1.0 + std::log(q_eff)) * q_dot;
        }
    });

    EntropyRates rates;
    rates.pi = scale * (pref_x * acc_x + pref_p * acc_p);
    rates.ds_dissipative = -scale * acc_dsd;
    rates.phi = rates.pi - rates.ds_dissipative;
    rates.husimi_norm = scale * acc_norm;
    rates.wehrl = -scale * acc_wehrl;
    rates.clamped_nodes = clamped;
    return rates;
}

double accumulate_sigma(const std::vector<double>& times, const std::vector<double>& pi) {
    if (times.size() != pi.size()) {
        throw std::invalid_argument("accumulate_sigma: times and pi differ in length");
    }
    if (times.size() < 2) {
        throw std::invalid_argument("accumulate_sigma: need at least two samples");
    }
    double acc = 0.0;
    for (size_t k = 1; k < times.size(); ++k) {
        const double dt = times[k] - times[k - 1];
        if (dt <= 0.0) {
            throw NonMonotoneTime("accumulate_sigma: times not strictly increasing at index " +
                                  std::to_string(k));
        }
        acc += 0.5 * dt * (pi[k] + pi[k - 1]);
    }
    return acc;
}

double verify_decomposition(int dim, int trials, std::uint64_t seed) {
    if (dim < 8) throw std::invalid_argument("verify_decomposition: dim must be >= 8");
    Matrix a = Matrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const Matrix adag = a.adjoint();
    const Matrix x = (a + adag) / std::sqrt(2.0);
    const Matrix p = Complex(0.0, -1.0) * (a - adag) / std::sqrt(2.0);

    const int interior = dim - dim / 4;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Matrix r = Matrix::Zero(dim, dim);
        for (int i = 0; i < interior; ++i) {
            for (int j = 0; j < interior; ++j) {
                r(i, j) = Complex(gauss(rng), gauss(rng));
            }
        }
        Matrix rho = hermitized(r);
        rho /= rho.norm();

        const Matrix lhs = commutator(x, anticommutator(p, rho));
        const Matrix rhs = Complex(0.0, -1.0) * commutator(x, commutator(x, rho)) -
                           Complex(0.0, std::sqrt(2.0)) * commutator(x, rho * a - adag * rho);
        const double dev =
            (lhs - rhs).topLeftCorner(interior, interior).cwiseAbs().maxCoeff();
        worst = std::max(worst, dev);
    }
    return worst;
}

} // namespace wellgrade::phasespace
