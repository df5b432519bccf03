// spinbasis.cpp — Construction of the truncated Holstein-Primakoff basis

#include "wellgrade/spinbasis.hpp"

#include <cmath>
#include <string>

#include "wellgrade/errors.hpp"

namespace wellgrade::spin {

namespace {

// Partial sum, to order kappa, of the Taylor series of sqrt(1 - x) about 0.
// All terms past the constant are negative, so the sum is monotone in kappa
// and no cancellation occurs.
double sqrt_taylor_partial(double x, int kappa) {
    double sum = 1.0;
    double term = 1.0; // term_q = binom(1/2, q) (-x)^q
    for (int q = 1; q <= kappa; ++q) {
        term *= x * (q - 1.5) / q;
        sum += term;
    }
    return sum;
}

} // namespace

SpinBasis build_basis(int dim, int kappa, double hbar) {
    if (dim < 2) {
        throw InvalidDimension("build_basis: dim must be >= 2, got " + std::to_string(dim));
    }
    if (kappa < 0) {
        throw InvalidDimension("build_basis: kappa must be >= 0, got " + std::to_string(kappa));
    }

    SpinBasis b;
    b.dim = dim;
    b.spin = 0.5 * (dim - 1);
    b.kappa = kappa;
    b.hbar = hbar;

    const int n = dim;
    const double two_j = 2.0 * b.spin;

    b.number = RealVector::LinSpaced(n, 0.0, n - 1.0);

    b.m_kappa.resize(n);
    for (int k = 0; k < n; ++k) {
        b.m_kappa[k] = hbar * std::sqrt(two_j) * sqrt_taylor_partial(k / two_j, kappa);
        if (std::abs(b.m_kappa[k]) < 1e-10) {
            throw NonInvertibleM("build_basis: M_kappa diagonal entry " + std::to_string(k) +
                                 " is below 1e-10; kappa too low for this dimension");
        }
    }

    b.j_plus = Matrix::Zero(n, n);
    b.j_z = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double m = b.spin - k;
        b.j_z(k, k) = hbar * m;
        if (k >= 1) {
            // <n-1|J_+|n> = hbar sqrt(j(j+1) - m(m+1)) = hbar sqrt(n(2j+1-n))
            b.j_plus(k - 1, k) = hbar * std::sqrt(k * (two_j + 1.0 - k));
        }
    }
    b.j_minus = b.j_plus.adjoint();

    // a = M^{-1} J_+ is a single superdiagonal; x' and p' share its entries
    // up to the 1/sqrt(2) and phase factors.
    b.ladder.resize(n - 1);
    for (int k = 0; k + 1 < n; ++k) {
        b.ladder[k] = b.j_plus(k, k + 1).real() / b.m_kappa[k] / std::sqrt(2.0);
    }

    b.x_op = Matrix::Zero(n, n);
    b.p_op = Matrix::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) {
        const double s = b.ladder[k];
        b.x_op(k, k + 1) = s;
        b.x_op(k + 1, k) = s;
        b.p_op(k, k + 1) = Complex(0.0, -s);
        b.p_op(k + 1, k) = Complex(0.0, s);
    }

    {
        RealMatrix x_real = b.x_op.real();
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(x_real);
        b.x_eigenvalues = es.eigenvalues();
        b.x_eigenvectors = es.eigenvectors();
    }
    {
        Matrix j_y = (b.j_plus - b.j_minus) / Complex(0.0, 2.0);
        Eigen::SelfAdjointEigenSolver<Matrix> es(j_y);
        b.jy_eigenvalues = es.eigenvalues();
        b.jy_eigenvectors = es.eigenvectors();
    }

    return b;
}

Matrix SpinBasis::number_op() const {
    return number.cast<Complex>().asDiagonal();
}

Matrix SpinBasis::m_kappa_op() const {
    return m_kappa.cast<Complex>().asDiagonal();
}

Matrix SpinBasis::m_kappa_inv_op() const {
    return m_kappa.cwiseInverse().cast<Complex>().asDiagonal();
}

Matrix SpinBasis::annihilation() const {
    return m_kappa.cwiseInverse().cast<Complex>().asDiagonal() * j_plus;
}

Matrix SpinBasis::parity() const {
    Vector d(dim);
    for (int k = 0; k < dim; ++k) d[k] = (k % 2 == 0) ? 1.0 : -1.0;
    return d.asDiagonal();
}

} // namespace wellgrade::spin
