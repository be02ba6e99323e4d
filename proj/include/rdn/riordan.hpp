#pragma once

#include <utility>
#include <vector>

#include "rdn/errors.hpp"
#include "rdn/matrix.hpp"
#include "rdn/series.hpp"

namespace rdn {

/// Riordan pair (g, F): g a unit series, F a delta series. The infinite
/// lower-triangular matrix has column j generated by g*F^j; the matrix is
/// never stored, truncations are materialized on demand.
template <class K>
class RiordanPair {
public:
    RiordanPair(Series<K> g, Series<K> F, double tol = kDefaultTol)
        : g_(std::move(g)), F_(std::move(F)) {
        if (!g_.is_unit(tol)) fail("NotUnit", "g must have nonzero constant term");
        if (!F_.is_delta(tol)) fail("NotDelta", "F must be a delta series");
        int n = std::min(g_.degree(), F_.degree());
        if (g_.degree() != n) g_ = truncate_to(g_, n);
        if (F_.degree() != n) F_ = truncate_to(F_, n);
    }

    static RiordanPair identity(int deg) {
        return RiordanPair(Series<K>::constant(field_ops<K>::one(), deg),
                           Series<K>::x(deg));
    }

    const Series<K>& g() const { return g_; }
    const Series<K>& F() const { return F_; }
    int degree() const { return g_.degree(); }

    const K& g0() const { return g_[0]; }
    const K& f1() const { return F_[1]; }

    /// g normalized to constant term 1.
    Series<K> ghat() const {
        Series<K> r(g_.degree());
        for (int i = 0; i <= g_.degree(); ++i) r.coeff(i) = K(g_[i] / g_[0]);
        return r;
    }

private:
    Series<K> g_, F_;
};

/// Entry a_ij = [x^i] g*F^j.
template <class K>
K entry(const RiordanPair<K>& A, int i, int j) {
    if (i > A.degree() || j > A.degree())
        fail("IndexBeyondTruncation", "entry index exceeds stored truncation");
    if (j > i) return field_ops<K>::zero();
    Series<K> col = truncate_to(A.g(), i);
    Series<K> f = truncate_to(A.F(), i);
    for (int t = 0; t < j; ++t) col = col * f;
    return col[i];
}

/// Leading n x n principal submatrix.
template <class K>
Matrix<K> truncate(const RiordanPair<K>& A, int n) {
    if (n < 1 || n > A.degree() + 1)
        fail("DimensionTooLarge", "dimension exceeds stored truncation");
    Matrix<K> m(n);
    Series<K> col = truncate_to(A.g(), n - 1);
    Series<K> f = truncate_to(A.F(), n - 1);
    for (int j = 0; j < n; ++j) {
        for (int i = j; i < n; ++i) m(i, j) = col[i];
        if (j + 1 < n) col = col * f;
    }
    return m;
}

/// Group law (g,F)(h,L) = (g*h(F), L(F)).
template <class K>
RiordanPair<K> multiply(const RiordanPair<K>& A, const RiordanPair<K>& B,
                        double tol = kDefaultTol) {
    Series<K> g = A.g() * compose(B.g(), A.F(), tol);
    Series<K> f = compose(B.F(), A.F(), tol);
    return RiordanPair<K>(std::move(g), std::move(f), tol);
}

/// Group inverse (1/g(Fbar), Fbar) with Fbar the compositional inverse.
template <class K>
RiordanPair<K> inverse(const RiordanPair<K>& A, double tol = kDefaultTol) {
    Series<K> fbar = comp_inverse(A.F(), tol);
    Series<K> one = Series<K>::constant(field_ops<K>::one(), A.degree());
    Series<K> g = div(one, compose(A.g(), fbar, tol), tol);
    return RiordanPair<K>(std::move(g), std::move(fbar), tol);
}

/// Fundamental action (g,F) h = g * h(F): the series form of the
/// matrix-vector product.
template <class K>
Series<K> apply(const RiordanPair<K>& A, const Series<K>& h, double tol = kDefaultTol) {
    return A.g() * compose(h, A.F(), tol);
}

/// Almost-Riordan triple (a, g, F): first column generated by a, the block
/// from position (1,1) onward is the Riordan matrix of (g, F). Only ever
/// materialized as a matrix factor.
template <class K>
struct AlmostRiordanTriple {
    Series<K> a, g, F;
};

template <class K>
Matrix<K> almost_matrix(const AlmostRiordanTriple<K>& T, int n) {
    if (n < 1) fail("BadDimension", "almost-Riordan matrix needs n >= 1");
    Matrix<K> m(n);
    for (int i = 0; i < n && i <= T.a.degree(); ++i) m(i, 0) = T.a[i];
    if (n >= 2) {
        Matrix<K> block = truncate(RiordanPair<K>(T.g, T.F), n - 1);
        for (int i = 1; i < n; ++i)
            for (int j = 1; j <= i; ++j) m(i, j) = block(i - 1, j - 1);
    }
    return m;
}

/// Two-factor decomposition (g,F) = (g, F/x, x)(1, g, F).
template <class K>
std::pair<AlmostRiordanTriple<K>, AlmostRiordanTriple<K>>
almost_decompose(const RiordanPair<K>& A) {
    int n = A.degree();
    Series<K> one = Series<K>::constant(field_ops<K>::one(), n);
    AlmostRiordanTriple<K> left{A.g(), shift_down(A.F(), 1), Series<K>::x(n - 1)};
    AlmostRiordanTriple<K> right{one, A.g(), A.F()};
    return {left, right};
}

/// The n-factor chain I_k (+) (g, F/x, x)_{n-k}, k = 0..n-1, whose ordered
/// product is exactly the n x n truncation.
template <class K>
std::vector<Matrix<K>> almost_factor_chain(const RiordanPair<K>& A, int n) {
    if (n < 1 || n > A.degree() + 1)
        fail("DimensionTooLarge", "dimension exceeds stored truncation");
    std::vector<Matrix<K>> factors;
    factors.reserve(size_t(n));
    for (int k = 0; k < n; ++k) {
        Matrix<K> m = Matrix<K>::identity(n);
        int sz = n - k;
        // embedded (g, F/x, x)_sz: column 0 from g, then shifted f-diagonals
        for (int i = 0; i < sz; ++i) {
            m(k + i, k) = A.g()[i];
            for (int j = 1; j <= i; ++j) m(k + i, k + j) = A.F()[i - j + 1];
        }
        factors.push_back(std::move(m));
    }
    return factors;
}

} // namespace rdn
