#pragma once

// Loop-level reference computations used as test oracles. Nothing here
// calls into the library beyond its types, so agreement is meaningful.

#include <cmath>
#include <complex>
#include <vector>

#include "qmin/types.hpp"

namespace ref {

using qmin::Complex;
using qmin::ComplexMatrix;

inline double hs_sq(const ComplexMatrix& m) {
    double s = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            s += std::norm(m(i, j));
    return s;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index r = 0; r < b.rows(); ++r)
                for (Eigen::Index s = 0; s < b.cols(); ++s)
                    k(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
    return k;
}

inline ComplexMatrix trace_b(const ComplexMatrix& rho, int m, int n) {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < n; ++j)
                out(i, k) += rho(i * n + j, k * n + j);
    return out;
}

inline ComplexMatrix trace_a(const ComplexMatrix& rho, int m, int n) {
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < m; ++i)
                out(j, l) += rho(i * n + j, i * n + l);
    return out;
}

inline ComplexMatrix projector(const ComplexMatrix& basis, Eigen::Index k) {
    return basis.col(k) * basis.col(k).adjoint();
}

/// sum_k (P_k (x) I) rho (P_k (x) I), or the B-side analogue.
inline ComplexMatrix pinch_a(const ComplexMatrix& rho, const ComplexMatrix& u, int n) {
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        const ComplexMatrix p = kron(projector(u, k), id);
        out += p * rho * p;
    }
    return out;
}

inline ComplexMatrix pinch_b(const ComplexMatrix& rho, const ComplexMatrix& v, int m) {
    const ComplexMatrix id = ComplexMatrix::Identity(m, m);
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        const ComplexMatrix p = kron(id, projector(v, k));
        out += p * rho * p;
    }
    return out;
}

inline ComplexMatrix pinch_ab(const ComplexMatrix& rho, const ComplexMatrix& u,
                              const ComplexMatrix& v) {
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (Eigen::Index i = 0; i < u.cols(); ++i)
        for (Eigen::Index j = 0; j < v.cols(); ++j) {
            const ComplexMatrix p = kron(projector(u, i), projector(v, j));
            out += p * rho * p;
        }
    return out;
}

inline ComplexMatrix pauli(int k) {
    ComplexMatrix s(2, 2);
    switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: s << 1, 0, 0, 1;
    }
    return s;
}

/// (1/4)(I + sum c_i sigma_i (x) sigma_i), built term by term.
inline ComplexMatrix bell_diagonal(double c1, double c2, double c3) {
    ComplexMatrix r = kron(pauli(0), pauli(0));
    const double c[3] = {c1, c2, c3};
    for (int i = 0; i < 3; ++i)
        r += c[i] * kron(pauli(i + 1), pauli(i + 1));
    return r / 4.0;
}

// With maximally mixed marginals only the correlation tensor T = diag(c)
// survives. Two-sided pinching along Bloch directions a, b keeps
// (a^T T b)(a.sigma)(x)(b.sigma), so the removed weight is
// (|T|^2 - (a^T T b)^2) / 4. For every a some b is orthogonal to T^T a,
// which gives the MiN value; the discord keeps the largest |c_i|.
inline double bell_diagonal_min_ab(double c1, double c2, double c3) {
    return (c1 * c1 + c2 * c2 + c3 * c3) / 4.0;
}

inline double bell_diagonal_gmqd_ab(double c1, double c2, double c3) {
    const double mx = std::max({c1 * c1, c2 * c2, c3 * c3});
    return (c1 * c1 + c2 * c2 + c3 * c3 - mx) / 4.0;
}

/// Werner state a I + b F on m (x) m from its definition.
inline ComplexMatrix werner(int m, double x) {
    const double d = static_cast<double>(m) * m * m - m;
    const double a = (m - x) / d, b = (m * x - 1.0) / d;
    ComplexMatrix r = ComplexMatrix::Zero(m * m, m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            r(i * m + j, i * m + j) += a;
            r(i * m + j, j * m + i) += b;
        }
    return r;
}

/// Removed weight is b^2 times the off-diagonal mass of F in the best
/// product basis, m^2 - 1 when B is unbiased to the conjugated A basis.
inline double werner_min_ab(int m, double x) {
    const double b = (m * x - 1.0) / (static_cast<double>(m) * m * m - m);
    return b * b * (m * m - 1.0);
}

} // namespace ref
