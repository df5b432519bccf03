// linalg.hpp — Small dense-matrix helpers shared across modules

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "wellgrade/errors.hpp"

namespace wellgrade {

using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

inline double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
    return hermiticity_defect(a) <= tol;
}

inline Matrix hermitized(const Matrix& a) {
    return 0.5 * (a + a.adjoint());
}

inline Matrix commutator(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

inline Matrix anticommutator(const Matrix& a, const Matrix& b) {
    return a * b + b * a;
}

inline double hs_norm(const Matrix& a) {
    return a.norm();
}

inline double purity(const Matrix& rho) {
    return rho.cwiseAbs2().sum();
}

// Checks the density-matrix contract: Hermitian, unit trace, near-PSD.
void validate_density_matrix(const Matrix& rho, double herm_tol = 1e-10,
                             double trace_tol = 1e-8, double psd_tol = 1e-8);

// PSD square root through the spectral decomposition. Eigenvalues below
// -neg_tol raise NegativeEigenvalue; small negative ones are clamped to 0.
Matrix psd_sqrt(const Matrix& a, double neg_tol = 1e-6);

// Shannon entropy of the eigenvalue distribution (von Neumann entropy).
double von_neumann_entropy(const Matrix& rho);

} // namespace wellgrade
