// linalg.cpp — Density-matrix validation and PSD spectral helpers

#include "wellgrade/linalg.hpp"

#include <cmath>
#include <string>

namespace wellgrade {

void validate_density_matrix(const Matrix& rho, double herm_tol, double trace_tol,
                             double psd_tol) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw InvalidDimension("validate_density_matrix: matrix must be square and nonempty");
    }
    const double herm = hermiticity_defect(rho);
    if (herm > herm_tol) {
        throw std::invalid_argument("validate_density_matrix: Hermiticity defect " +
                                    std::to_string(herm));
    }
    const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (tr_err > trace_tol) {
        throw std::invalid_argument("validate_density_matrix: trace deviates from 1 by " +
                                    std::to_string(tr_err));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(rho), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -psd_tol) {
        throw NegativeEigenvalue("validate_density_matrix: eigenvalue " +
                                 std::to_string(min_eig) + " below -" +
                                 std::to_string(psd_tol));
    }
}

Matrix psd_sqrt(const Matrix& a, double neg_tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(a));
    RealVector vals = es.eigenvalues();
    if (vals.minCoeff() < -neg_tol) {
        throw NegativeEigenvalue("psd_sqrt: eigenvalue " + std::to_string(vals.minCoeff()) +
                                 " below -" + std::to_string(neg_tol));
    }
    RealVector roots = vals.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * roots.cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
}

double von_neumann_entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(rho), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()[i];
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

} // namespace wellgrade
