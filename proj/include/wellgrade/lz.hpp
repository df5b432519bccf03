// lz.hpp — Landau-Zener two-level model: analytic playground for CD driving

#pragma once

#include "wellgrade/linalg.hpp"

namespace wellgrade::lz {

// H_LZ = Delta sigma_z + g(t) sigma_x with g ramping linearly g0 -> g1.
struct LZSpec {
    double delta = 0.05;
    double g0 = -1.0;
    double g1 = 1.0;
    double tau = 1.0;
    bool with_cd = false;
    double hbar = 1.0;

    double g(double t) const { return g0 + (g1 - g0) * t / tau; }
    double g_dot() const { return (g1 - g0) / tau; }
    void validate() const;
};

Matrix lz_hamiltonian(const LZSpec& spec, double t);

// Closed-form CD term -(g_dot Delta / 2(Delta^2 + g^2)) sigma_y.
Matrix lz_cd(const LZSpec& spec, double t);

struct LZResult {
    double final_fidelity = 0.0; // to the instantaneous ground state at tau
    double min_fidelity = 0.0;   // over the sweep
    double final_sigma_x = 0.0;
};

// Closed propagation from the instantaneous ground state at t = 0, tracking
// fidelity to the instantaneous ground state.
LZResult lz_run(const LZSpec& spec);

} // namespace wellgrade::lz
