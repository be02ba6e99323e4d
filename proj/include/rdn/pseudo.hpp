#pragma once

// Pseudo-involution checks on truncations and the numerical side: a
// one-sided Jacobi SVD for small dense matrices, the reciprocal pairing
// of singular values, and the sign-robust structural identity relating
// the two orthogonal factors.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rdn/errors.hpp"
#include "rdn/matrix.hpp"
#include "rdn/riordan.hpp"

namespace rdn {

/// M = sign * diag(1,-1,1,-1,...), the matrix of (sign, -x).
template <class T>
Matrix<T> sign_matrix(int n, int sign = 1) {
    Matrix<T> m(n);
    T v = T(sign);
    for (int i = 0; i < n; ++i) {
        m(i, i) = v;
        v = T(-v);
    }
    return m;
}

/// P = backward identity; P*diag(d)*P reverses the diagonal.
template <class T>
Matrix<T> reversal_matrix(int n) {
    Matrix<T> m(n);
    for (int i = 0; i < n; ++i) m(i, n - 1 - i) = T{1};
    return m;
}

/// (A M)^2 = I on the n x n truncation, exactly over the exact field and
/// within tol over the complex one.
template <class K>
bool is_pseudo_involution(const RiordanPair<K>& A, int n, double tol = kDefaultTol) {
    Matrix<K> T = truncate(A, n);
    Matrix<K> M = sign_matrix<K>(n);
    Matrix<K> TM = T * M;
    return matrix_eq(TM * TM, Matrix<K>::identity(n), tol);
}

/// B * B^T = I on the n x n truncation. Among Riordan truncations this
/// holds exactly for (1, -x) and (-1, -x) only.
template <class K>
bool riordan_orthogonality_check(const RiordanPair<K>& B, int n,
                                 double tol = kDefaultTol) {
    Matrix<K> T = truncate(B, n);
    return matrix_eq(T * T.transpose(), Matrix<K>::identity(n), tol);
}

struct SvdFactors {
    Matrix<double> U;
    std::vector<double> sigma; // descending
    Matrix<double> V;

    SvdFactors() : U(0), V(0) {}
};

inline constexpr int kJacobiSweepCap = 60;

/// One-sided Jacobi SVD: rotates column pairs of a working copy until all
/// column-pair dot products are negligible against the column norms.
/// Unconditionally robust for the small dense matrices used here.
inline SvdFactors svd(const Matrix<double>& A, double tol = 1e-13,
                      int sweep_cap = kJacobiSweepCap) {
    int n = A.size();
    Matrix<double> W = A;
    Matrix<double> V = Matrix<double>::identity(n);

    bool converged = false;
    for (int sweep = 0; sweep < sweep_cap && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double alpha = 0, beta = 0, gamma = 0;
                for (int i = 0; i < n; ++i) {
                    alpha += W(i, p) * W(i, p);
                    beta += W(i, q) * W(i, q);
                    gamma += W(i, p) * W(i, q);
                }
                if (std::fabs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                converged = false;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = (zeta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int i = 0; i < n; ++i) {
                    double wp = W(i, p), wq = W(i, q);
                    W(i, p) = c * wp - s * wq;
                    W(i, q) = s * wp + c * wq;
                    double vp = V(i, p), vq = V(i, q);
                    V(i, p) = c * vp - s * vq;
                    V(i, q) = s * vp + c * vq;
                }
            }
        }
    }
    if (!converged) fail("NoConvergence", "Jacobi sweeps exhausted");

    std::vector<double> sig(size_t(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double norm = 0;
        for (int i = 0; i < n; ++i) norm += W(i, j) * W(i, j);
        sig[size_t(j)] = std::sqrt(norm);
    }
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sig[size_t(a)] > sig[size_t(b)]; });

    SvdFactors f;
    f.U = Matrix<double>(n);
    f.V = Matrix<double>(n);
    f.sigma.resize(size_t(n));
    for (int j = 0; j < n; ++j) {
        int src = order[size_t(j)];
        double s = sig[size_t(src)];
        f.sigma[size_t(j)] = s;
        for (int i = 0; i < n; ++i) {
            f.U(i, j) = (s > 0) ? W(i, src) / s : (i == j ? 1.0 : 0.0);
            f.V(i, j) = V(i, src);
        }
    }
    return f;
}

struct ReciprocalPair {
    int i = 0, j = 0;         // 1-based positions pairing sigma_i with sigma_j
    double product = 0;
    double defect = 0;        // |sigma_i * sigma_j - 1|
};

struct ReciprocalReport {
    bool ok = false;
    double max_defect = 0;
    std::vector<ReciprocalPair> pairs;
};

/// sigma_i * sigma_{n+1-i} = 1 within tol for every i.
inline ReciprocalReport reciprocal_pairs_check(const std::vector<double>& sigma,
                                               double tol = 1e-7) {
    ReciprocalReport rep;
    int n = int(sigma.size());
    rep.ok = true;
    for (int i = 1; 2 * i <= n + 1; ++i) {
        ReciprocalPair p;
        p.i = i;
        p.j = n + 1 - i;
        p.product = sigma[size_t(i - 1)] * sigma[size_t(n - i)];
        p.defect = std::fabs(p.product - 1.0);
        rep.max_defect = std::max(rep.max_defect, p.defect);
        if (p.defect > tol) rep.ok = false;
        rep.pairs.push_back(p);
    }
    return rep;
}

/// Sign-robust form of the V = MUP structure: for a pseudo-involution
/// truncation, A^T A = (MUP) Sigma^2 (MUP)^T regardless of the per-column
/// sign (or equal-sigma rotation) freedom in U.
inline bool structure_check(const Matrix<double>& A, const SvdFactors& f,
                            double tol = 1e-8) {
    int n = A.size();
    Matrix<double> MUP = sign_matrix<double>(n) * f.U * reversal_matrix<double>(n);
    Matrix<double> S2(n);
    for (int i = 0; i < n; ++i) S2(i, i) = f.sigma[size_t(i)] * f.sigma[size_t(i)];
    Matrix<double> lhs = A.transpose() * A;
    Matrix<double> rhs = MUP * S2 * MUP.transpose();
    return max_abs_diff(lhs, rhs) <= tol;
}

/// Truncation converted to doubles for the numerical routines.
inline Matrix<double> to_double(const Matrix<Rat>& m) {
    Matrix<double> r(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) r(i, j) = m(i, j).get_d();
    return r;
}

inline Matrix<double> to_double(const Matrix<Cplx>& m) {
    Matrix<double> r(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) r(i, j) = m(i, j).real();
    return r;
}

} // namespace rdn
