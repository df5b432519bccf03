// phasespace.hpp — Spin coherent states, Husimi field, Wehrl entropy, entropy rates

#pragma once

#include <cstdint>
#include <vector>

#include "wellgrade/spinbasis.hpp"

namespace wellgrade::phasespace {

using spin::SpinBasis;

// Product quadrature on the sphere: Gauss-Legendre in cos(theta) times the
// periodic trapezoid in phi. Weights include the measure, so sum(w) = 4*pi.
struct SphereGrid {
    int n_theta = 0;
    int n_phi = 0;
    RealVector theta;         // Gauss-Legendre nodes mapped to [0, pi]
    RealVector theta_weight;  // GL weights (sum 2)
    RealVector phi;           // uniform nodes in [0, 2*pi)

    int nodes() const { return n_theta * n_phi; }
    double weight(int i_theta) const { return theta_weight[i_theta] * 2.0 * M_PI / n_phi; }
};

// Defaults follow the band limit of degree-2j coherent-state overlaps:
// n_theta = 2N, n_phi = 4N + 1. Exact for spherical harmonics up to degree
// min(2 n_theta - 1, n_phi - 1).
SphereGrid sphere_grid(int basis_dim, int n_theta = 0, int n_phi = 0);

struct HusimiField {
    const SphereGrid* grid = nullptr;
    RealVector q;           // row-major over (i_theta, i_phi), clamped at 0
    double min_raw = 0.0;   // most negative raw value seen before clamping
    double normalization = 0.0; // (N/4pi) sum w q

    double value(int i_theta, int i_phi) const;
};

// Q(Omega) = <Omega|rho|Omega> with |Omega> = e^{-i phi Jz} e^{-i theta Jy} |j,j>.
HusimiField husimi_field(const Matrix& rho, const SphereGrid& grid, const SpinBasis& basis);

// S_Q = -(N/4pi) Integral dOmega Q ln Q with the 0 ln 0 -> 0 convention.
double wehrl_entropy(const HusimiField& field, int basis_dim);

struct EnvironmentCoefficients {
    double gamma = 0.0;
    double lambda = 0.0;
    double temperature = 1.0;
    double mass = 1.0;
    double hbar = 1.0;

    double gamma_x() const { return gamma * mass * temperature / (hbar * hbar); }
    double gamma_p() const { return gamma / (16.0 * mass * temperature); }
};

struct EntropyRates {
    double pi = 0.0;        // irreversible production rate
    double phi = 0.0;       // flux rate, from Phi = Pi - dS_D/dt
    double ds_dissipative = 0.0;
    double husimi_norm = 0.0;
    double wehrl = 0.0;
    int clamped_nodes = 0;  // nodes where Q fell below q_floor
};

// Spin-representation entropy rates:
//   Pi = (gamma/2hbar + gamma_x + Lambda) (N/4pi) Int |J_x|^2/Q
//      + gamma_p (N/4pi) Int |J_p|^2/Q,
// with currents J_O = <Omega|[O, rho]|Omega>, O = x', p'. The flux is
// recovered from the dissipative Wehrl rate: dS_D/dt = Pi - Phi, where
// dS_D/dt is evaluated on the Husimi transform of the dissipative generator
// alone. Also returns the Husimi normalization and Wehrl entropy computed on
// the same pass.
EntropyRates entropy_rates(const Matrix& rho, const SphereGrid& grid, const SpinBasis& basis,
                           const EnvironmentCoefficients& env, double q_floor = 1e-14);

// Trapezoidal Sigma_ir = Int Pi dt over the sample grid. Throws
// NonMonotoneTime unless times are strictly increasing.
double accumulate_sigma(const std::vector<double>& times, const std::vector<double>& pi);

// Brute-force check of the dissipator decomposition
//   [x, {p, rho}] = -i [x, [x, rho]] - i sqrt(2) [x, rho a - a^dag rho]
// on a truncated Fock space: random Hermitian rho supported away from the
// truncation edge (top quarter of levels zeroed), both sides evaluated
// directly; returns the max entrywise deviation on the interior block.
double verify_decomposition(int dim, int trials, std::uint64_t seed = 0x5eed);

} // namespace wellgrade::phasespace
