// sta.cpp — Counter-diabatic machinery

#include "wellgrade/sta.hpp"

#include <algorithm>
#include <cmath>
#include <stack>
#include <string>

#include "wellgrade/errors.hpp"

namespace wellgrade::sta {

EigenFrame eigenframe(const Matrix& h, const EigenFrame* prev, double t) {
    if (!is_hermitian(h, 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
        throw std::invalid_argument("eigenframe: operator is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    EigenFrame f;
    f.t = t;
    f.energies = es.eigenvalues();
    f.states = es.eigenvectors();
    if (!prev) return f;

    const int n = static_cast<int>(f.states.cols());
    if (prev->states.cols() != n) {
        throw std::invalid_argument("eigenframe: previous frame dimension mismatch");
    }
    Matrix overlap = prev->states.adjoint() * f.states; // overlap(r, c) = <prev_r|c>

    // pair each previous row with its best new column, greedily by |overlap|
    std::vector<int> match(n, -1);
    std::vector<bool> used(n, false);
    for (int r = 0; r < n; ++r) {
        double best = -1.0, second = -1.0;
        int arg = -1;
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            const double a = std::abs(overlap(r, c));
            if (a > best) {
                second = best;
                best = a;
                arg = c;
            } else if (a > second) {
                second = a;
            }
        }
        if (second >= 0.0 && best - second < 1e-6) {
            throw GaugeAmbiguity("eigenframe: overlaps " + std::to_string(best) + " and " +
                                 std::to_string(second) + " for previous state " +
                                 std::to_string(r) + " are indistinguishable");
        }
        match[r] = arg;
        used[arg] = true;
    }

    EigenFrame out;
    out.t = t;
    out.energies.resize(n);
    out.states.resize(n, n);
    for (int r = 0; r < n; ++r) {
        const int c = match[r];
        Complex ov = overlap(r, c);
        Complex phase = (std::abs(ov) > 0.0) ? ov / std::abs(ov) : Complex(1.0, 0.0);
        out.states.col(r) = f.states.col(c) / phase;
        out.energies[r] = f.energies[c];
    }
    return out;
}

CDReport cd_from_frame(const EigenFrame& frame, const Matrix& h_dot, double hbar,
                       double gap_floor) {
    const int n = static_cast<int>(frame.states.cols());
    Matrix w = frame.states.adjoint() * h_dot * frame.states;

    Matrix core = Matrix::Zero(n, n);
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double gap = frame.energies[j] - frame.energies[i];
            const double agap = std::abs(gap);
            if (agap <= gap_floor) {
                if (std::abs(w(i, j)) > 1e-12) {
                    throw DegenerateGap("cd_from_frame: levels " + std::to_string(i) + "," +
                                        std::to_string(j) + " are degenerate (gap " +
                                        std::to_string(agap) + ") but coupled by H_dot");
                }
                continue;
            }
            min_gap = std::min(min_gap, agap);
            core(i, j) = Complex(0.0, hbar) * w(i, j) / gap;
        }
    }

    CDReport rep;
    rep.t = frame.t;
    rep.h_sta = frame.states * core * frame.states.adjoint();
    rep.h_sta = hermitized(rep.h_sta);
    rep.cost = rep.h_sta.norm();
    rep.min_gap = min_gap;
    return rep;
}

namespace {

// Frame + CD evaluation through the real-symmetric path (H0 is real in the
// number basis); roughly twice as fast as the generic complex solver.
struct CdEvaluator {
    const SpinBasis& basis;
    const SystemSpec& system;
    const ProtocolSpec& protocol;
    model::HamiltonianTerms terms;

    CdEvaluator(const SpinBasis& b, const SystemSpec& s, const ProtocolSpec& p)
        : basis(b), system(s), protocol(p), terms(model::hamiltonian_terms(b, s, p)) {}

    EigenFrame frame_at(double t) const {
        Matrix h = model::build_hamiltonian(terms, basis, protocol, t);
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.real());
        EigenFrame f;
        f.t = t;
        f.energies = es.eigenvalues();
        f.states = es.eigenvectors().cast<Complex>();
        return f;
    }

    // cost and lowest gap without assembling H_STA
    std::pair<double, double> cost_gap_at(double t) const {
        Matrix h = model::build_hamiltonian(terms, basis, protocol, t);
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.real());
        const RealVector& e = es.eigenvalues();
        RealMatrix x_eig = es.eigenvectors().transpose() * basis.x_op.real() *
                           es.eigenvectors();
        const double a_dot = model::control_alpha_dot(protocol, t);
        double cost2 = 0.0;
        const int n = basis.dim;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double gap = e[j] - e[i];
                if (std::abs(gap) <= 1e-13) continue;
                const double elem = basis.hbar * a_dot * x_eig(i, j) / gap;
                cost2 += 2.0 * elem * elem;
            }
        }
        return {std::sqrt(cost2), e[1] - e[0]};
    }
};

} // namespace

CDReport cd_hamiltonian(const SpinBasis& basis, const SystemSpec& /*system*/,
                        const ProtocolSpec& protocol, double t, const EigenFrame& frame,
                        double gap_floor) {
    if (!model::is_quantum(protocol.kind)) {
        throw std::invalid_argument("cd_hamiltonian: protocol kind must be quantum");
    }
    const double a_dot = model::control_alpha_dot(protocol, t);
    return cd_from_frame(frame, a_dot * basis.x_op, basis.hbar, gap_floor);
}

std::vector<std::pair<double, double>> sta_cost_profile(const ProtocolSpec& protocol,
                                                        const SystemSpec& system,
                                                        const SpinBasis& basis,
                                                        const std::vector<double>& times) {
    if (!model::is_quantum(protocol.kind)) {
        throw std::invalid_argument("sta_cost_profile: protocol kind must be quantum");
    }
    CdEvaluator eval(basis, system, protocol);
    std::vector<std::pair<double, double>> out;
    out.reserve(times.size());
    for (double t : times) out.emplace_back(t, eval.cost_gap_at(t).first);
    return out;
}

CdScan CdScan::build(const SpinBasis& basis, const SystemSpec& system,
                     const ProtocolSpec& protocol, int n_coarse, double rel_tol,
                     int max_depth) {
    if (!model::is_quantum(protocol.kind)) {
        throw std::invalid_argument("CdScan: protocol kind must be quantum");
    }
    CdEvaluator eval(basis, system, protocol);
    const double tau = protocol.tau;

    struct Node {
        double t, cost, gap;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * n_coarse);
    for (int i = 0; i < n_coarse; ++i) {
        const double t = tau * i / (n_coarse - 1);
        auto [c, g] = eval.cost_gap_at(t);
        nodes.push_back({t, c, g});
    }
    double coarse_peak = 0.0;
    for (const Node& n : nodes) coarse_peak = std::max(coarse_peak, n.cost);
    const double abs_floor = 1e-6 * std::max(coarse_peak, 1e-30);

    // bisect cells whose midpoint deviates from the linear interpolant
    struct Cell {
        Node left, right;
        int depth;
    };
    std::stack<Cell> work;
    std::vector<Node> refined;
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        work.push({nodes[i], nodes[i + 1], 0});
    }
    const double min_dt = std::max(1e-13 * tau, 4.0 * std::numeric_limits<double>::epsilon() * tau);
    while (!work.empty()) {
        Cell c = work.top();
        work.pop();
        const double dt = c.right.t - c.left.t;
        const double tm = 0.5 * (c.left.t + c.right.t);
        if (c.depth >= max_depth || dt <= min_dt || tm <= c.left.t || tm >= c.right.t) {
            refined.push_back(c.left);
            continue;
        }
        auto [cm, gm] = eval.cost_gap_at(tm);
        const double interp = 0.5 * (c.left.cost + c.right.cost);
        const double scale = std::max({cm, c.left.cost, c.right.cost});
        if (std::abs(cm - interp) > rel_tol * scale + abs_floor) {
            Node mid{tm, cm, gm};
            work.push({mid, c.right, c.depth + 1});
            work.push({c.left, mid, c.depth + 1});
        } else {
            refined.push_back(c.left);
            // keep the midpoint too; it costs nothing and tightens the envelope
            refined.push_back({tm, cm, gm});
        }
    }
    refined.push_back(nodes.back());
    std::sort(refined.begin(), refined.end(),
              [](const Node& a, const Node& b) { return a.t < b.t; });

    CdScan scan;
    scan.t_.reserve(refined.size());
    scan.cost_.reserve(refined.size());
    scan.gap01_.reserve(refined.size());
    scan.min_gap01_ = std::numeric_limits<double>::infinity();
    for (const Node& n : refined) {
        if (!scan.t_.empty() && n.t == scan.t_.back()) continue;
        scan.t_.push_back(n.t);
        scan.cost_.push_back(n.cost);
        scan.gap01_.push_back(n.gap);
        if (n.cost > scan.peak_cost_) {
            scan.peak_cost_ = n.cost;
            scan.peak_time_ = n.t;
        }
        if (n.gap < scan.min_gap01_) {
            scan.min_gap01_ = n.gap;
            scan.min_gap01_time_ = n.t;
        }
    }
    return scan;
}

double CdScan::max_cost_on(double t0, double t1) const {
    if (t_.empty()) return 0.0;
    t0 = std::max(t0, t_.front());
    t1 = std::min(t1, t_.back());
    if (t1 <= t0) t1 = t0;
    const auto lower = std::lower_bound(t_.begin(), t_.end(), t0);
    size_t i = (lower == t_.begin()) ? 0 : (lower - t_.begin() - 1);
    double best = 0.0;
    auto interp = [&](size_t k, double t) {
        const double w = (t - t_[k]) / (t_[k + 1] - t_[k]);
        return cost_[k] + w * (cost_[k + 1] - cost_[k]);
    };
    for (; i + 1 < t_.size() && t_[i] <= t1; ++i) {
        const double a = std::max(t_[i], t0);
        const double b = std::min(t_[i + 1], t1);
        if (b < a) continue;
        best = std::max({best, interp(i, a), interp(i, b)});
    }
    return best;
}

std::vector<std::pair<double, double>> h1_gap_curve(const SpinBasis& basis,
                                                    const SystemSpec& system,
                                                    const ProtocolSpec& protocol,
                                                    const std::vector<double>& times) {
    CdEvaluator eval(basis, system, protocol);
    std::vector<std::pair<double, double>> out;
    out.reserve(times.size());
    for (double t : times) {
        EigenFrame frame = eval.frame_at(t);
        CDReport rep = cd_from_frame(frame, model::control_alpha_dot(protocol, t) * basis.x_op,
                                     basis.hbar);
        Matrix h1 = model::build_hamiltonian(eval.terms, basis, protocol, t) + rep.h_sta;
        Eigen::SelfAdjointEigenSolver<Matrix> es(h1, Eigen::EigenvaluesOnly);
        out.emplace_back(t, es.eigenvalues()[1] - es.eigenvalues()[0]);
    }
    return out;
}

} // namespace wellgrade::sta
