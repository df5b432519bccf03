// kernels.cpp — Tridiagonal and banded generator kernels

#include "wellgrade/kernels.hpp"

namespace wellgrade::kern {

// Column-major loops: the inner index runs over rows of one column so both
// reads and writes stay contiguous.

void x_left(const RealVector& s, const Matrix& a, Matrix& out) {
    const int n = static_cast<int>(a.rows());
    out.resize(n, a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        const Complex* col = a.col(j).data();
        Complex* dst = out.col(j).data();
        for (int i = 0; i < n; ++i) {
            Complex v = 0.0;
            if (i > 0) v += s[i - 1] * col[i - 1];
            if (i + 1 < n) v += s[i] * col[i + 1];
            dst[i] = v;
        }
    }
}

void x_right(const RealVector& s, const Matrix& a, Matrix& out) {
    const int n = static_cast<int>(a.cols());
    out.resize(a.rows(), n);
    for (int j = 0; j < n; ++j) {
        auto dst = out.col(j);
        dst.setZero();
        if (j > 0) dst += s[j - 1] * a.col(j - 1);
        if (j + 1 < n) dst += s[j] * a.col(j + 1);
    }
}

void p_left(const RealVector& s, const Matrix& a, Matrix& out) {
    const int n = static_cast<int>(a.rows());
    out.resize(n, a.cols());
    const Complex im(0.0, 1.0);
    for (int j = 0; j < a.cols(); ++j) {
        const Complex* col = a.col(j).data();
        Complex* dst = out.col(j).data();
        for (int i = 0; i < n; ++i) {
            Complex v = 0.0;
            if (i > 0) v += im * s[i - 1] * col[i - 1];
            if (i + 1 < n) v -= im * s[i] * col[i + 1];
            dst[i] = v;
        }
    }
}

void p_right(const RealVector& s, const Matrix& a, Matrix& out) {
    const int n = static_cast<int>(a.cols());
    out.resize(a.rows(), n);
    const Complex im(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        auto dst = out.col(j);
        dst.setZero();
        if (j > 0) dst -= im * s[j - 1] * a.col(j - 1);
        if (j + 1 < n) dst += im * s[j] * a.col(j + 1);
    }
}

void commutator_x(const RealVector& s, const Matrix& a, Matrix& out) {
    const int n = static_cast<int>(a.rows());
    out.resize(n, n);
    for (int j = 0; j < n; ++j) {
        const Complex* col = a.col(j).data();
        const Complex* left = (j > 0) ? a.col(j - 1).data() : nullptr;
        const Complex* right = (j + 1 < n) ? a.col(j + 1).data() : nullptr;
        Complex* dst = out.col(j).data();
        const double sl = (j > 0) ? s[j - 1] : 0.0;
        const double sr = (j + 1 < n) ? s[j] : 0.0;
        for (int i = 0; i < n; ++i) {
            Complex v = 0.0;
            if (i > 0) v += s[i - 1] * col[i - 1];
            if (i + 1 < n) v += s[i] * col[i + 1];
            if (left) v -= sl * left[i];
            if (right) v -= sr * right[i];
            dst[i] = v;
        }
    }
}

void commutator_p(const RealVector& s, const Matrix& a, Matrix& out) {
    const int n = static_cast<int>(a.rows());
    out.resize(n, n);
    const Complex im(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        const Complex* col = a.col(j).data();
        const Complex* left = (j > 0) ? a.col(j - 1).data() : nullptr;
        const Complex* right = (j + 1 < n) ? a.col(j + 1).data() : nullptr;
        Complex* dst = out.col(j).data();
        const double sl = (j > 0) ? s[j - 1] : 0.0;
        const double sr = (j + 1 < n) ? s[j] : 0.0;
        for (int i = 0; i < n; ++i) {
            Complex v = 0.0;
            if (i > 0) v += im * s[i - 1] * col[i - 1];
            if (i + 1 < n) v -= im * s[i] * col[i + 1];
            // minus (A p): (A p)_{ij} = -i s_{j-1} A_{i,j-1} + i s_j A_{i,j+1}
            if (left) v += im * sl * left[i];
            if (right) v -= im * sr * right[i];
            dst[i] = v;
        }
    }
}

void anticommutator_p(const RealVector& s, const Matrix& a, Matrix& out) {
    const int n = static_cast<int>(a.rows());
    out.resize(n, n);
    const Complex im(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        const Complex* col = a.col(j).data();
        const Complex* left = (j > 0) ? a.col(j - 1).data() : nullptr;
        const Complex* right = (j + 1 < n) ? a.col(j + 1).data() : nullptr;
        Complex* dst = out.col(j).data();
        const double sl = (j > 0) ? s[j - 1] : 0.0;
        const double sr = (j + 1 < n) ? s[j] : 0.0;
        for (int i = 0; i < n; ++i) {
            Complex v = 0.0;
            if (i > 0) v += im * s[i - 1] * col[i - 1];
            if (i + 1 < n) v -= im * s[i] * col[i + 1];
            if (left) v -= im * sl * left[i];
            if (right) v += im * sr * right[i];
            dst[i] = v;
        }
    }
}

void commutator_h(const Matrix& h, int bandwidth, const Matrix& a, Matrix& out, Matrix& tmp) {
    const int n = static_cast<int>(a.rows());
    if (bandwidth < 0 || bandwidth >= n) {
        tmp.noalias() = h * a;
        tmp.noalias() -= a * h;
        out = tmp;
        return;
    }
    out.resize(n, n);
    out.setZero();
    // H A by diagonals: out(i, :) += H(i, i+d) A(i+d, :)
    for (int d = -bandwidth; d <= bandwidth; ++d) {
        const int i0 = std::max(0, -d);
        const int i1 = std::min(n, n - d);
        for (int j = 0; j < n; ++j) {
            const Complex* col = a.col(j).data();
            Complex* dst = out.col(j).data();
            for (int i = i0; i < i1; ++i) {
                dst[i] += h(i, i + d) * col[i + d];
            }
        }
    }
    // minus A H by columns: out(:, j) -= A(:, j+d) H(j+d, j)
    for (int j = 0; j < n; ++j) {
        auto dst = out.col(j);
        const int d0 = std::max(-bandwidth, -j);
        const int d1 = std::min(bandwidth, n - 1 - j);
        for (int d = d0; d <= d1; ++d) {
            dst -= h(j + d, j) * a.col(j + d);
        }
    }
}

void dissipative_generator(const RealVector& s, const DissipatorCoefficients& c,
                           const Matrix& rho, Matrix& out, Matrix& w1, Matrix& w2) {
    const int n = static_cast<int>(rho.rows());
    out.resize(n, n);
    out.setZero();
    if (c.closed()) return;

    const double cxx = c.lambda + c.gamma_x;
    if (cxx != 0.0) {
        commutator_x(s, rho, w1);
        commutator_x(s, w1, w2);
        out -= cxx * w2;
    }
    if (c.gamma_p != 0.0) {
        commutator_p(s, rho, w1);
        commutator_p(s, w1, w2);
        out -= c.gamma_p * w2;
    }
    if (c.gamma != 0.0) {
        anticommutator_p(s, rho, w1);
        commutator_x(s, w1, w2);
        out -= Complex(0.0, 0.5 * c.gamma / c.hbar) * w2;
    }
}

} // namespace wellgrade::kern
