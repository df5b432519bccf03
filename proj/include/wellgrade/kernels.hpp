// kernels.hpp — Banded applications of x', p' and the dissipative generator
//
// x' and p' are tridiagonal in the number basis and share one real coupling
// vector s (s_n = <n|x'|n+1>, <n|p'|n+1> = -i s_n). Everything here is
// O(N^2) per call, which keeps the master-equation right-hand side far below
// the cost of dense matrix products.

#pragma once

#include "wellgrade/linalg.hpp"

namespace wellgrade::kern {

// out = x A   (x tridiagonal symmetric with couplings s)
void x_left(const RealVector& s, const Matrix& a, Matrix& out);
// out = A x
void x_right(const RealVector& s, const Matrix& a, Matrix& out);
// out = p A   (<n|p|n+1> = -i s_n)
void p_left(const RealVector& s, const Matrix& a, Matrix& out);
// out = A p
void p_right(const RealVector& s, const Matrix& a, Matrix& out);

// out = [x, A]
void commutator_x(const RealVector& s, const Matrix& a, Matrix& out);
// out = [p, A]
void commutator_p(const RealVector& s, const Matrix& a, Matrix& out);
// out = {p, A}
void anticommutator_p(const RealVector& s, const Matrix& a, Matrix& out);

// out = H A - A H, where H is Hermitian banded with the given bandwidth
// (bandwidth < 0 uses dense products through `tmp`).
void commutator_h(const Matrix& h, int bandwidth, const Matrix& a, Matrix& out, Matrix& tmp);

struct DissipatorCoefficients {
    double lambda = 0.0;   // localization diffusion
    double gamma = 0.0;    // friction
    double gamma_x = 0.0;  // gamma m kB T / hbar^2
    double gamma_p = 0.0;  // gamma / (16 m kB T)
    double hbar = 1.0;

    bool closed() const { return lambda == 0.0 && gamma == 0.0; }
};

// out = -(lambda + gamma_x) [x,[x,rho]] - gamma_p [p,[p,rho]]
//       - (i gamma / 2 hbar) [x,{p,rho}]
// Workspaces w1, w2 must match rho's shape.
void dissipative_generator(const RealVector& s, const DissipatorCoefficients& c,
                           const Matrix& rho, Matrix& out, Matrix& w1, Matrix& w2);

} // namespace wellgrade::kern
