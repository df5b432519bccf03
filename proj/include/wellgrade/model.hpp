// model.hpp — Double-well Hamiltonian, control schedules, and reference states

#pragma once

#include <optional>
#include <vector>

#include "wellgrade/spinbasis.hpp"

namespace wellgrade::model {

using spin::SpinBasis;

// Free double-well parameters: V(x) = c1 x^2 + c2 x^4 with c1 < 0 < c2.
struct SystemSpec {
    double mass = 1.0;
    double c1 = -1.5;
    double c2 = 0.05;

    double well_position() const;   // sqrt(-c1 / 2 c2)
    double barrier_height() const;  // c1^2 / 4 c2 above the well bottoms
    void validate() const;          // double-well shape (c1 < 0, c2 > 0)
};

enum class ProtocolKind { Classical1, Classical2, Quantum1, Quantum2 };

bool is_quantum(ProtocolKind k);
const char* to_string(ProtocolKind k);
ProtocolKind protocol_kind_from_string(const std::string& name);

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::Quantum1;
    double delta = 1e-3;     // seed tilt, > 0
    double amplitude = 5.0;  // maximal tilt A (classical kinds only)
    double tau = 1.0;        // protocol duration
    double ramp_fraction = 1.0 / 6.0; // forward-ramp share of tau (classical)

    void validate() const;
};

struct ControlValues {
    double alpha = 0.0;
    double beta = 0.0;
};

// Control parameters at time t. Classical kinds ramp alpha piecewise-linearly
// -delta -> A on [0, r*tau] and back to -delta on [r*tau, tau]; Classical2
// also ramps beta 0 -> 1 -> 0 on the same knots. Quantum kinds follow the
// cubic/quintic interpolants from -delta to +delta with vanishing endpoint
// slope (the quintic also has zero slope at tau/2). Throws OutOfRange for
// t outside [0, tau].
ControlValues control_values(const ProtocolSpec& protocol, double t);

// d(alpha)/dt of the quantum schedules (analytic). Classical kinds return the
// piecewise slope; at the knots the left slope is used.
double control_alpha_dot(const ProtocolSpec& protocol, double t);

// Cached time-independent pieces of H(t); build once, reuse per stage.
struct HamiltonianTerms {
    Matrix h_static;    // p'^2/2m + c1 x'^2 + c2 x'^4 (bandwidth 4)
    Matrix flatten;     // Classical2 barrier term (zero matrix otherwise)
    int bandwidth = 4;  // of h_static; the tilt term stays inside it
    bool has_flatten = false;
};

HamiltonianTerms hamiltonian_terms(const SpinBasis& basis, const SystemSpec& system,
                                   const ProtocolSpec& protocol);

// H(t) = h_static + alpha(t) x' + beta(t) * flatten.
Matrix build_hamiltonian(const SpinBasis& basis, const SystemSpec& system,
                         const ProtocolSpec& protocol, double t);
Matrix build_hamiltonian(const HamiltonianTerms& terms, const SpinBasis& basis,
                         const ProtocolSpec& protocol, double t);

enum class WellSide { Left, Right, Delocalized };

// Instantaneous eigenframe of a Hermitian operator; columns of `states` are
// the eigenvectors, `energies` ascending unless gauge-matched to a previous
// frame (see sta::eigenframe).
struct EigenFrame {
    double t = 0.0;
    RealVector energies;
    Matrix states;
    std::vector<WellSide> labels; // filled by classify_wells

    int index_of(WellSide side, int rank) const; // rank-th state with label
};

// Labels each state Right/Left when |<x'>| exceeds x_thresh, else
// Delocalized.
void classify_wells(EigenFrame& frame, const SpinBasis& basis, double x_thresh = 1.0);

// Pure state 0.6|0>_R + 0.8|1>_R built from the classified eigenstates of
// H0(0). Throws WellClassificationFailed if fewer than two right-localized
// states lie below the barrier.
Matrix initial_state(const SpinBasis& basis, const SystemSpec& system,
                     const ProtocolSpec& protocol);

// Target 0.6 e^{-i E0_R tau/hbar}|0>_L + 0.8 e^{-i E1_R tau/hbar}|1>_L. The
// left states are the parity mirrors of the right ones, which fixes their
// sign convention independently of the eigensolver; the phases carry the
// right-well energies.
Matrix target_state(const SpinBasis& basis, const SystemSpec& system,
                    const ProtocolSpec& protocol, double tau);

// Gibbs state exp(-H/kB T)/Z with kB = 1; the spectrum is shifted by its
// minimum before exponentiating.
Matrix thermal_state(const Matrix& hamiltonian, double temperature);

// omega = (E1_R - E0_R)/hbar of H0(0), the right-well level spacing used to
// convert tau*omega timescales.
double well_frequency(const SpinBasis& basis, const SystemSpec& system,
                      const ProtocolSpec& protocol);

struct LevelComparison {
    double discrete = 0.0;
    double continuum = 0.0;
    double rel_err = 0.0;
};

struct ContinuumGrid {
    double x_min = -12.0;
    double x_max = 12.0;
    int n_points = 4000;
};

// Compares spin-basis eigenvalues at time t against a second-order
// finite-difference continuum solver on the uniform grid. Throws
// GridTooCoarse if doubling n_points moves any of the first 15 continuum
// levels by more than 0.1%.
std::vector<LevelComparison> benchmark_discretization(const SpinBasis& basis,
                                                      const SystemSpec& system,
                                                      const ProtocolSpec& protocol,
                                                      double t, const ContinuumGrid& grid,
                                                      int n_levels = 20);

// Lowest n_levels eigenvalues of -(hbar^2/2m) d^2/dx^2 + V(x) on a uniform
// grid, by Sturm bisection on the finite-difference tridiagonal matrix.
// Exposed as the independent oracle for the discretization benchmark.
std::vector<double> continuum_levels(const SystemSpec& system, double alpha, double beta,
                                     const ContinuumGrid& grid, int n_levels,
                                     double hbar = 1.0);

} // namespace wellgrade::model
