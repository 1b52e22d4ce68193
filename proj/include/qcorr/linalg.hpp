#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "qcorr/errors.hpp"

namespace qcorr {

using cplx = std::complex<double>;

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// Dense N x N complex matrix, value type for all qubit algebra.
template <std::size_t N>
struct Matrix {
    std::array<cplx, N * N> a{};

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) a[k] += o.a[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < N * N; ++k) a[k] -= o.a[k];
        return *this;
    }
    Matrix& operator*=(cplx s) {
        for (auto& x : a) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix l, const Matrix& r) { return l += r; }
    friend Matrix operator-(Matrix l, const Matrix& r) { return l -= r; }
    friend Matrix operator*(cplx s, Matrix m) { return m *= s; }
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
inline cplx trace(const Matrix<N>& m) {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += m(i, i);
    return t;
}

template <std::size_t N>
inline Matrix<N> adjoint(const Matrix<N>& m) {
    Matrix<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

template <std::size_t N>
inline Matrix<N> mul(const Matrix<N>& l, const Matrix<N>& r) {
    Matrix<N> p;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            const cplx lik = l(i, k);
            if (lik == cplx{}) continue;
            for (std::size_t j = 0; j < N; ++j) p(i, j) += lik * r(k, j);
        }
    return p;
}

// tr(l * r) without forming the product.
template <std::size_t N>
inline cplx trace_product(const Matrix<N>& l, const Matrix<N>& r) {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) t += l(i, j) * r(j, i);
    return t;
}

inline Mat4 kron(const Mat2& l, const Mat2& r) {
    Mat4 k;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q)
                    k(2 * i + p, 2 * j + q) = l(i, j) * r(p, q);
    return k;
}

// Pauli matrices, k in {1, 2, 3}.
inline Mat2 pauli(int k) {
    Mat2 s;
    switch (k) {
        case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
        case 2: s(0, 1) = cplx(0.0, -1.0); s(1, 0) = cplx(0.0, 1.0); break;
        case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
        default: throw domain_error("pauli: index must be 1, 2 or 3");
    }
    return s;
}

template <std::size_t N>
inline bool is_hermitian(const Matrix<N>& m, double tol = 1e-10) {
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
// Off-diagonal mass is driven below 1e-13 relative to the matrix norm;
// at most 100 sweeps (far more than 4x4 matrices ever need).
template <std::size_t N>
inline std::array<double, N> hermitian_eigenvalues(const Matrix<N>& input) {
    Matrix<N> h = input;
    double norm = 0.0;
    for (const auto& x : h.a) norm += std::norm(x);
    norm = std::sqrt(norm);
    const double tol = 1e-13 * std::max(1.0, norm);

    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) off += 2.0 * std::norm(h(i, j));
        if (std::sqrt(off) <= tol) {
            converged = true;
            break;
        }

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx hpq = h(p, q);
                const double m = std::abs(hpq);
                if (m <= tol / (N * N)) continue;
                const cplx phase = hpq / m;  // e^{i arg(h_pq)}
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double tau = (aqq - app) / (2.0 * m);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary J: J(p,p)=c, J(p,q)=s, J(q,p)=-s conj(phase),
                // J(q,q)=c conj(phase); h <- J^dagger h J zeroes h(p,q).
                for (std::size_t i = 0; i < N; ++i) {
                    const cplx hip = h(i, p);
                    const cplx hiq = h(i, q);
                    h(i, p) = c * hip - s * std::conj(phase) * hiq;
                    h(i, q) = s * hip + c * std::conj(phase) * hiq;
                }
                for (std::size_t j = 0; j < N; ++j) {
                    const cplx hpj = h(p, j);
                    const cplx hqj = h(q, j);
                    h(p, j) = c * hpj - s * phase * hqj;
                    h(q, j) = s * hpj + c * phase * hqj;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) off += 2.0 * std::norm(h(i, j));
        if (std::sqrt(off) > tol)
            throw consistency_error("hermitian_eigenvalues: Jacobi did not converge");
    }

    std::array<double, N> eig;
    for (std::size_t i = 0; i < N; ++i) eig[i] = h(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

// Sum of absolute eigenvalues of a Hermitian matrix.
template <std::size_t N>
inline double trace_norm(const Matrix<N>& m) {
    if (!is_hermitian(m))
        throw validation_error("trace_norm: matrix is not Hermitian");
    double t = 0.0;
    for (double e : hermitian_eigenvalues(m)) t += std::abs(e);
    return t;
}

inline double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

} // namespace qcorr
