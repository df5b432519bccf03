// model.cpp — Double-well Hamiltonian, schedules, states, and the continuum oracle

#include "wellgrade/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wellgrade/errors.hpp"

namespace wellgrade::model {

namespace {

constexpr double kTimeSlack = 1e-9;

// Scalar potential including the control terms; used by the continuum oracle
// and the barrier estimate.
double potential_value(const SystemSpec& sys, double alpha, double beta, double x) {
    double v = sys.c1 * x * x + sys.c2 * std::pow(x, 4) + alpha * x;
    if (beta != 0.0 && sys.c2 > 0.0) {
        const double region = -sys.c1 / (2.0 * sys.c2) - x * x;
        if (region >= 0.0) {
            const double bracket = sys.c1 * sys.c1 / (4.0 * sys.c2) +
                                   sys.c1 * x * x + sys.c2 * std::pow(x, 4);
            v -= beta * bracket;
        }
    }
    return v;
}

double barrier_energy(const SystemSpec& sys, double alpha, double beta) {
    // local max of the tilted potential between the wells, from a dense scan
    const double w = sys.well_position();
    double best = -std::numeric_limits<double>::infinity();
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double x = -w + 2.0 * w * i / (n - 1);
        best = std::max(best, potential_value(sys, alpha, beta, x));
    }
    return best;
}

double clamp_time(const ProtocolSpec& p, double t, const char* who) {
    const double slack = kTimeSlack * std::max(1.0, p.tau);
    if (t < -slack || t > p.tau + slack) {
        throw OutOfRange(std::string(who) + ": t = " + std::to_string(t) +
                         " outside [0, " + std::to_string(p.tau) + "]");
    }
    return std::clamp(t, 0.0, p.tau);
}

double expectation_x(const SpinBasis& basis, const Eigen::Ref<const Vector>& v) {
    double acc = 0.0;
    for (int k = 0; k + 1 < basis.dim; ++k) {
        acc += 2.0 * basis.ladder[k] * (std::conj(v[k]) * v[k + 1]).real();
    }
    return acc;
}

EigenFrame real_symmetric_frame(const Matrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.real());
    EigenFrame f;
    f.t = t;
    f.energies = es.eigenvalues();
    f.states = es.eigenvectors().cast<Complex>();
    return f;
}

struct WellStates {
    Vector right0, right1;
    double e0 = 0.0, e1 = 0.0;
};

WellStates right_well_pair(const SpinBasis& basis, const SystemSpec& system,
                           const ProtocolSpec& protocol) {
    const ControlValues c = control_values(protocol, 0.0);
    Matrix h = build_hamiltonian(basis, system, protocol, 0.0);
    EigenFrame frame = real_symmetric_frame(h, 0.0);
    classify_wells(frame, basis);

    const double barrier = barrier_energy(system, c.alpha, c.beta);
    std::vector<int> right, left;
    for (int i = 0; i < basis.dim; ++i) {
        if (frame.energies[i] >= barrier) break;
        if (frame.labels[i] == WellSide::Right) right.push_back(i);
        if (frame.labels[i] == WellSide::Left) left.push_back(i);
    }
    if (right.size() < 2) {
        throw WellClassificationFailed(
            "right_well_pair: found " + std::to_string(right.size()) +
            " right-localized states below the barrier, need 2");
    }
    if (left.size() < 2) {
        throw WellClassificationFailed(
            "right_well_pair: found " + std::to_string(left.size()) +
            " left-localized states below the barrier, need 2");
    }
    WellStates w;
    w.right0 = frame.states.col(right[0]);
    w.right1 = frame.states.col(right[1]);
    w.e0 = frame.energies[right[0]];
    w.e1 = frame.energies[right[1]];
    return w;
}

// Sturm-sequence count of eigenvalues of a symmetric tridiagonal matrix
// below lambda.
int sturm_count(const RealVector& d, const RealVector& e, double lambda) {
    int count = 0;
    double q = 1.0;
    const int n = static_cast<int>(d.size());
    for (int i = 0; i < n; ++i) {
        const double e2 = (i == 0) ? 0.0 : e[i - 1] * e[i - 1];
        q = d[i] - lambda - (i == 0 ? 0.0 : e2 / q);
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> tridiag_lowest(const RealVector& d, const RealVector& e, int k) {
    const int n = static_cast<int>(d.size());
    double lo = d.minCoeff(), hi = d.maxCoeff();
    for (int i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    std::vector<double> out(k);
    const double scale = std::max(std::abs(lo), std::abs(hi));
    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        while (b - a > 1e-13 * scale + 1e-14) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(d, e, mid) >= j + 1) b = mid;
            else a = mid;
        }
        out[j] = 0.5 * (a + b);
    }
    return out;
}

} // namespace

double SystemSpec::well_position() const {
    return std::sqrt(-c1 / (2.0 * c2));
}

double SystemSpec::barrier_height() const {
    return c1 * c1 / (4.0 * c2);
}

void SystemSpec::validate() const {
    if (!(mass > 0.0)) throw std::invalid_argument("SystemSpec: mass must be > 0");
    if (!(c1 < 0.0)) throw std::invalid_argument("SystemSpec: c1 must be < 0");
    if (!(c2 > 0.0)) throw std::invalid_argument("SystemSpec: c2 must be > 0");
}

bool is_quantum(ProtocolKind k) {
    return k == ProtocolKind::Quantum1 || k == ProtocolKind::Quantum2;
}

const char* to_string(ProtocolKind k) {
    switch (k) {
        case ProtocolKind::Classical1: return "classical1";
        case ProtocolKind::Classical2: return "classical2";
        case ProtocolKind::Quantum1: return "quantum1";
        case ProtocolKind::Quantum2: return "quantum2";
    }
    return "unknown";
}

ProtocolKind protocol_kind_from_string(const std::string& name) {
    if (name == "classical1") return ProtocolKind::Classical1;
    if (name == "classical2") return ProtocolKind::Classical2;
    if (name == "quantum1") return ProtocolKind::Quantum1;
    if (name == "quantum2") return ProtocolKind::Quantum2;
    throw std::invalid_argument("protocol.kind: unknown value '" + name + "'");
}

void ProtocolSpec::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("ProtocolSpec: delta must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("ProtocolSpec: tau must be > 0");
    if (!is_quantum(kind) && !(amplitude > delta)) {
        throw std::invalid_argument("ProtocolSpec: amplitude must exceed delta for classical kinds");
    }
    if (!(ramp_fraction > 0.0 && ramp_fraction <= 0.5)) {
        throw std::invalid_argument("ProtocolSpec: ramp_fraction must lie in (0, 1/2]");
    }
}

ControlValues control_values(const ProtocolSpec& protocol, double t) {
    t = clamp_time(protocol, t, "control_values");
    const double tau = protocol.tau;
    const double d = protocol.delta;
    ControlValues out;
    switch (protocol.kind) {
        case ProtocolKind::Classical1:
        case ProtocolKind::Classical2: {
            const double knot = protocol.ramp_fraction * tau;
            const double a = protocol.amplitude;
            const double ramp = (t <= knot) ? t / knot : 1.0 - (t - knot) / (tau - knot);
            out.alpha = -d + (a + d) * ramp;
            if (protocol.kind == ProtocolKind::Classical2) out.beta = ramp;
            break;
        }
        case ProtocolKind::Quantum1: {
            const double u = t / tau;
            out.alpha = d * (-1.0 + 6.0 * u * u - 4.0 * u * u * u);
            break;
        }
        case ProtocolKind::Quantum2: {
            const double u = t / tau;
            const double u2 = u * u;
            out.alpha = d * (-1.0 + 30.0 * u2 - 100.0 * u2 * u + 120.0 * u2 * u2 -
                             48.0 * u2 * u2 * u);
            break;
        }
    }
    return out;
}

double control_alpha_dot(const ProtocolSpec& protocol, double t) {
    t = clamp_time(protocol, t, "control_alpha_dot");
    const double tau = protocol.tau;
    const double d = protocol.delta;
    switch (protocol.kind) {
        case ProtocolKind::Classical1:
        case ProtocolKind::Classical2: {
            const double knot = protocol.ramp_fraction * tau;
            const double a = protocol.amplitude;
            return (t <= knot) ? (a + d) / knot : -(a + d) / (tau - knot);
        }
        case ProtocolKind::Quantum1: {
            const double u = t / tau;
            return d / tau * (12.0 * u - 12.0 * u * u);
        }
        case ProtocolKind::Quantum2: {
            const double u = t / tau;
            return d / tau *
                   (60.0 * u - 300.0 * u * u + 480.0 * u * u * u - 240.0 * u * u * u * u);
        }
    }
    return 0.0;
}

static HamiltonianTerms make_terms(const SpinBasis& basis, const SystemSpec& system,
                                   bool with_flatten) {
    HamiltonianTerms terms;
    Matrix x2 = basis.x_op * basis.x_op;
    terms.h_static = basis.p_op * basis.p_op / (2.0 * system.mass) + system.c1 * x2 +
                     system.c2 * (x2 * x2);
    terms.bandwidth = 4;
    terms.has_flatten = with_flatten;
    if (with_flatten) {
        const int n = basis.dim;
        RealVector diag(n);
        const double edge = -system.c1 / (2.0 * system.c2);
        for (int k = 0; k < n; ++k) {
            const double xi2 = basis.x_eigenvalues[k] * basis.x_eigenvalues[k];
            const double bracket = system.c1 * system.c1 / (4.0 * system.c2) +
                                   system.c1 * xi2 + system.c2 * xi2 * xi2;
            diag[k] = (edge - xi2 >= 0.0) ? -bracket : 0.0;
        }
        RealMatrix f = basis.x_eigenvectors * diag.asDiagonal() *
                       basis.x_eigenvectors.transpose();
        terms.flatten = f.cast<Complex>();
    } else {
        terms.flatten = Matrix::Zero(basis.dim, basis.dim);
    }
    return terms;
}

HamiltonianTerms hamiltonian_terms(const SpinBasis& basis, const SystemSpec& system,
                                   const ProtocolSpec& protocol) {
    return make_terms(basis, system, protocol.kind == ProtocolKind::Classical2);
}

Matrix build_hamiltonian(const HamiltonianTerms& terms, const SpinBasis& basis,
                         const ProtocolSpec& protocol, double t) {
    const ControlValues c = control_values(protocol, t);
    Matrix h = terms.h_static;
    for (int k = 0; k + 1 < basis.dim; ++k) {
        h(k, k + 1) += c.alpha * basis.ladder[k];
        h(k + 1, k) += c.alpha * basis.ladder[k];
    }
    if (c.beta != 0.0 && terms.has_flatten) h += c.beta * terms.flatten;
    return h;
}

Matrix build_hamiltonian(const SpinBasis& basis, const SystemSpec& system,
                         const ProtocolSpec& protocol, double t) {
    return build_hamiltonian(hamiltonian_terms(basis, system, protocol), basis, protocol, t);
}

int EigenFrame::index_of(WellSide side, int rank) const {
    int seen = 0;
    for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
        if (labels[i] == side && seen++ == rank) return i;
    }
    return -1;
}

void classify_wells(EigenFrame& frame, const SpinBasis& basis, double x_thresh) {
    const int n = static_cast<int>(frame.states.cols());
    frame.labels.assign(n, WellSide::Delocalized);
    for (int i = 0; i < n; ++i) {
        const double x = expectation_x(basis, frame.states.col(i));
        if (x > x_thresh) frame.labels[i] = WellSide::Right;
        else if (x < -x_thresh) frame.labels[i] = WellSide::Left;
    }
}

Matrix initial_state(const SpinBasis& basis, const SystemSpec& system,
                     const ProtocolSpec& protocol) {
    const WellStates w = right_well_pair(basis, system, protocol);
    Vector psi = 0.6 * w.right0 + 0.8 * w.right1;
    return psi * psi.adjoint();
}

Matrix target_state(const SpinBasis& basis, const SystemSpec& system,
                    const ProtocolSpec& protocol, double tau) {
    const WellStates w = right_well_pair(basis, system, protocol);
    const Matrix parity = basis.parity();
    const Complex phase0 = std::exp(Complex(0.0, -w.e0 * tau / basis.hbar));
    const Complex phase1 = std::exp(Complex(0.0, -w.e1 * tau / basis.hbar));
    Vector phi = 0.6 * phase0 * (parity * w.right0) + 0.8 * phase1 * (parity * w.right1);
    return phi * phi.adjoint();
}

Matrix thermal_state(const Matrix& hamiltonian, double temperature) {
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("thermal_state: temperature must be > 0");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(hamiltonian));
    const RealVector& e = es.eigenvalues();
    RealVector w = ((e.array() - e.minCoeff()) / (-temperature)).exp();
    w /= w.sum();
    return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double well_frequency(const SpinBasis& basis, const SystemSpec& system,
                      const ProtocolSpec& protocol) {
    const WellStates w = right_well_pair(basis, system, protocol);
    return (w.e1 - w.e0) / basis.hbar;
}

std::vector<double> continuum_levels(const SystemSpec& system, double alpha, double beta,
                                     const ContinuumGrid& grid, int n_levels, double hbar) {
    if (grid.n_points < 16) throw std::invalid_argument("continuum_levels: grid too small");
    const int n = grid.n_points;
    const double dx = (grid.x_max - grid.x_min) / (n + 1);
    RealVector d(n), e(n - 1);
    const double kin = hbar * hbar / (system.mass * dx * dx);
    for (int i = 0; i < n; ++i) {
        const double x = grid.x_min + (i + 1) * dx;
        d[i] = kin + potential_value(system, alpha, beta, x);
    }
    e.setConstant(-0.5 * kin);
    return tridiag_lowest(d, e, n_levels);
}

std::vector<LevelComparison> benchmark_discretization(const SpinBasis& basis,
                                                      const SystemSpec& system,
                                                      const ProtocolSpec& protocol,
                                                      double t, const ContinuumGrid& grid,
                                                      int n_levels) {
    const ControlValues c = control_values(protocol, t);
    n_levels = std::min(n_levels, basis.dim);

    std::vector<double> cont =
        continuum_levels(system, c.alpha, c.beta, grid, n_levels, basis.hbar);
    ContinuumGrid fine = grid;
    fine.n_points = 2 * grid.n_points;
    std::vector<double> cont2 =
        continuum_levels(system, c.alpha, c.beta, fine, n_levels, basis.hbar);
    const int check = std::min(n_levels, 15);
    for (int i = 0; i < check; ++i) {
        const double ref = std::max(std::abs(cont2[i]), 1e-12);
        if (std::abs(cont[i] - cont2[i]) / ref > 1e-3) {
            throw GridTooCoarse("benchmark_discretization: level " + std::to_string(i) +
                                " shifts by more than 0.1% when doubling n_points");
        }
    }

    Matrix h = build_hamiltonian(basis, system, protocol, t);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.real(), Eigen::EigenvaluesOnly);

    std::vector<LevelComparison> out(n_levels);
    for (int i = 0; i < n_levels; ++i) {
        out[i].discrete = es.eigenvalues()[i];
        out[i].continuum = cont[i];
        out[i].rel_err = std::abs(out[i].discrete - out[i].continuum) /
                         std::max(std::abs(out[i].continuum), 1e-12);
    }
    return out;
}

} // namespace wellgrade::model
