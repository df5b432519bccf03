// spinbasis.hpp — Truncated Holstein-Primakoff spin representation of a bosonic mode

#pragma once

#include <Eigen/Dense>

#include "wellgrade/linalg.hpp"

namespace wellgrade::spin {

// Finite spin-j realization of one bosonic mode. The basis is ordered by the
// excitation number n = j - m (n = 0 is the top-J_z state |j,j>), so low n is
// the low-energy sector the truncation is accurate in.
//
// The ladder map is a ~= M_kappa^{-1} J_+ and a^dag ~= J_- M_kappa^{-1},
// where M_kappa is the Taylor expansion, to order kappa in n about n = 0, of
// hbar*sqrt(2j - n) evaluated on the number operator. The dimensionless
// quadratures are
//   x' = (J_- M^{-1} + M^{-1} J_+)/sqrt(2),
//   p' = i (J_- M^{-1} - M^{-1} J_+)/sqrt(2).
struct SpinBasis {
    int dim = 0;       // N = 2j + 1
    double spin = 0.0; // j
    int kappa = 0;     // Taylor order of M_kappa
    double hbar = 1.0;

    RealVector m_kappa;       // diagonal of M_kappa in the number basis
    RealVector number;        // spectrum of n = j - J_z/hbar: 0..N-1
    RealVector ladder;        // s_n = <n|x'|n+1>; x',p' share these couplings

    Matrix j_plus, j_minus, j_z;
    Matrix x_op, p_op;

    // x' eigensystem (x' is real symmetric tridiagonal); reused for the
    // left/right projector, the l1-coherence basis and the flattening step.
    RealVector x_eigenvalues;
    RealMatrix x_eigenvectors;

    // J_y eigensystem; spin coherent states are built from it.
    RealVector jy_eigenvalues;
    Matrix jy_eigenvectors;

    Matrix number_op() const;
    Matrix m_kappa_op() const;
    Matrix m_kappa_inv_op() const;
    Matrix annihilation() const; // M_kappa^{-1} J_+
    Matrix parity() const;       // diag((-1)^n), anticommutes with x' and p'
};

// Builds the basis. Throws InvalidDimension for dim < 2 or kappa < 0 and
// NonInvertibleM if any diagonal entry of M_kappa falls below 1e-10 in
// magnitude.
SpinBasis build_basis(int dim, int kappa, double hbar = 1.0);

} // namespace wellgrade::spin
