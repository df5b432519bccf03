// sta.hpp — Instantaneous eigenframes and counter-diabatic driving

#pragma once

#include <utility>
#include <vector>

#include "wellgrade/model.hpp"

namespace wellgrade::sta {

using model::EigenFrame;
using model::ProtocolSpec;
using model::SystemSpec;
using spin::SpinBasis;

// Eigen-decomposition of a Hermitian operator, ascending by energy. With a
// previous frame, columns are reordered by maximal overlap and phase-rotated
// so <prev_i|i> is real positive; two overlap candidates within 1e-6 of each
// other for the same column raise GaugeAmbiguity (a crossing finer than the
// time step).
EigenFrame eigenframe(const Matrix& h, const EigenFrame* prev = nullptr, double t = 0.0);

struct CDReport {
    double t = 0.0;
    Matrix h_sta;
    double cost = 0.0;    // ||H_STA||_hs
    double min_gap = 0.0; // smallest |E_j - E_i| over the pairs in the sum
};

// H_STA = i hbar sum_{i != j} |i><i| H_dot |j><j| / (E_j - E_i), the exact
// counter-diabatic term for an arbitrary frame and drive generator. Pairs
// with |E_j - E_i| <= gap_floor are skipped, but only if their coupling is
// negligible; otherwise DegenerateGap is raised.
CDReport cd_from_frame(const EigenFrame& frame, const Matrix& h_dot, double hbar,
                       double gap_floor = 1e-13);

// CD term for the double-well quantum schedules, where H0_dot = alpha_dot x'.
CDReport cd_hamiltonian(const SpinBasis& basis, const SystemSpec& system,
                        const ProtocolSpec& protocol, double t, const EigenFrame& frame,
                        double gap_floor = 1e-13);

// ||H_STA(t)||_hs sampled on the given times (exact evaluation per point).
std::vector<std::pair<double, double>> sta_cost_profile(const ProtocolSpec& protocol,
                                                        const SystemSpec& system,
                                                        const SpinBasis& basis,
                                                        const std::vector<double>& times);

// Adaptively refined scan of the CD cost and the lowest H0 gap along the
// schedule. The cost curve near the level crossing is a narrow resonance
// (width ~ gap/alpha_dot, orders of magnitude below any fixed grid), so the
// scan bisects cells until the piecewise-linear interpolant is locally
// faithful; the propagator uses the result as a step-size ceiling so the
// integrator cannot step across the resonance unnoticed.
class CdScan {
  public:
    static CdScan build(const SpinBasis& basis, const SystemSpec& system,
                        const ProtocolSpec& protocol, int n_coarse = 2001,
                        double rel_tol = 0.05, int max_depth = 48);

    const std::vector<double>& times() const { return t_; }
    const std::vector<double>& costs() const { return cost_; }
    const std::vector<double>& gaps01() const { return gap01_; }

    double peak_cost() const { return peak_cost_; }
    double peak_time() const { return peak_time_; }
    double min_gap01() const { return min_gap01_; }
    double min_gap01_time() const { return min_gap01_time_; }

    // max of the piecewise-linear cost interpolant over [t0, t1]
    double max_cost_on(double t0, double t1) const;

  private:
    std::vector<double> t_, cost_, gap01_;
    double peak_cost_ = 0.0, peak_time_ = 0.0;
    double min_gap01_ = 0.0, min_gap01_time_ = 0.0;
};

// Gap E1 - E0 of H1 = H0 + H_STA on the given times (diagnostic for the
// gap-engineering claims).
std::vector<std::pair<double, double>> h1_gap_curve(const SpinBasis& basis,
                                                    const SystemSpec& system,
                                                    const ProtocolSpec& protocol,
                                                    const std::vector<double>& times);

} // namespace wellgrade::sta
