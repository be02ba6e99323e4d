#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rdn/errors.hpp"
#include "rdn/field.hpp"

namespace rdn {

/// Formal power series truncated at x^(N+1): exactly the coefficients of
/// x^0..x^N are stored and every operation is exact modulo x^(N+1).
/// Binary operations on mixed truncations keep the minimum degree.
template <class K>
class Series {
public:
    explicit Series(int deg) : coeffs_(size_t(deg) + 1, field_ops<K>::zero()) {
        if (deg < 0) fail("BadTruncation", "negative truncation degree");
    }

    Series(int deg, std::vector<K> coeffs) : Series(deg) {
        for (size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i)
            coeffs_[i] = std::move(coeffs[i]);
    }

    static Series constant(const K& c, int deg) {
        Series s(deg);
        s.coeffs_[0] = c;
        return s;
    }

    static Series x(int deg) { return monomial(field_ops<K>::one(), 1, deg); }

    static Series monomial(const K& c, int power, int deg) {
        Series s(deg);
        if (power <= deg) s.coeffs_[size_t(power)] = c;
        return s;
    }

    int degree() const { return int(coeffs_.size()) - 1; }

    const K& operator[](int i) const { return coeffs_[size_t(i)]; }
    K& coeff(int i) { return coeffs_[size_t(i)]; }

    const std::vector<K>& coeffs() const { return coeffs_; }

    /// Index of the lowest nonzero coefficient, or nullopt for the zero
    /// series (at this truncation).
    std::optional<int> order(double tol = kDefaultTol) const {
        for (int i = 0; i <= degree(); ++i)
            if (!field_ops<K>::is_zero(coeffs_[size_t(i)], tol)) return i;
        return std::nullopt;
    }

    bool is_zero(double tol = kDefaultTol) const { return !order(tol).has_value(); }

    /// Unit series: invertible under multiplication (a(0) != 0).
    bool is_unit(double tol = kDefaultTol) const {
        return !field_ops<K>::is_zero(coeffs_[0], tol);
    }

    /// Delta series: invertible under composition (a(0) = 0, a'(0) != 0).
    bool is_delta(double tol = kDefaultTol) const {
        return degree() >= 1 && field_ops<K>::is_zero(coeffs_[0], tol) &&
               !field_ops<K>::is_zero(coeffs_[1], tol);
    }

private:
    std::vector<K> coeffs_;
};

enum class SeriesClass { Unit, Delta, General };

template <class K>
SeriesClass classify_series(const Series<K>& a, double tol = kDefaultTol) {
    if (a.is_unit(tol)) return SeriesClass::Unit;
    if (a.is_delta(tol)) return SeriesClass::Delta;
    return SeriesClass::General;
}

template <class K>
bool series_eq(const Series<K>& a, const Series<K>& b, double tol = kDefaultTol) {
    int n = std::min(a.degree(), b.degree());
    for (int i = 0; i <= n; ++i)
        if (!field_ops<K>::eq(a[i], b[i], tol)) return false;
    return true;
}

template <class K>
Series<K> truncate_to(const Series<K>& a, int deg) {
    if (deg > a.degree())
        fail("BadTruncation", "cannot extend a truncated series");
    Series<K> r(deg);
    for (int i = 0; i <= deg; ++i) r.coeff(i) = a[i];
    return r;
}

/// Multiply by x^k: coefficients shift upward and the truncation degree
/// grows by k, since the low coefficients are exactly known.
template <class K>
Series<K> shift_up(const Series<K>& a, int k) {
    Series<K> r(a.degree() + k);
    for (int i = 0; i <= a.degree(); ++i) r.coeff(i + k) = a[i];
    return r;
}

/// Divide by x^k: the truncation degree drops by k. The caller is
/// responsible for the dropped coefficients being zero.
template <class K>
Series<K> shift_down(const Series<K>& a, int k) {
    if (k > a.degree()) fail("BadTruncation", "shift_down past truncation");
    Series<K> r(a.degree() - k);
    for (int i = k; i <= a.degree(); ++i) r.coeff(i - k) = a[i];
    return r;
}

template <class K>
Series<K> operator+(const Series<K>& a, const Series<K>& b) {
    int n = std::min(a.degree(), b.degree());
    Series<K> r(n);
    for (int i = 0; i <= n; ++i) r.coeff(i) = K(a[i] + b[i]);
    return r;
}

template <class K>
Series<K> operator-(const Series<K>& a, const Series<K>& b) {
    int n = std::min(a.degree(), b.degree());
    Series<K> r(n);
    for (int i = 0; i <= n; ++i) r.coeff(i) = K(a[i] - b[i]);
    return r;
}

template <class K>
Series<K> operator-(const Series<K>& a) {
    Series<K> r(a.degree());
    for (int i = 0; i <= a.degree(); ++i) r.coeff(i) = K(-a[i]);
    return r;
}

/// Cauchy product through the shared truncation degree.
template <class K>
Series<K> operator*(const Series<K>& a, const Series<K>& b) {
    int n = std::min(a.degree(), b.degree());
    Series<K> r(n);
    for (int i = 0; i <= n; ++i) {
        K acc = field_ops<K>::zero();
        for (int j = 0; j <= i; ++j) acc = K(acc + a[j] * b[i - j]);
        r.coeff(i) = acc;
    }
    return r;
}

template <class K>
Series<K> operator*(const K& c, const Series<K>& a) {
    Series<K> r(a.degree());
    for (int i = 0; i <= a.degree(); ++i) r.coeff(i) = K(c * a[i]);
    return r;
}

template <class K>
Series<K> pow_u(const Series<K>& a, unsigned long e) {
    Series<K> acc = Series<K>::constant(field_ops<K>::one(), a.degree());
    Series<K> b = a;
    while (e != 0) {
        if (e & 1u) acc = acc * b;
        b = b * b;
        e >>= 1u;
    }
    return acc;
}

/// Division by a unit series: q with q*b = a through the truncation.
template <class K>
Series<K> div(const Series<K>& a, const Series<K>& b, double tol = kDefaultTol) {
    if (!b.is_unit(tol))
        fail("DivisionByNonUnit", "divisor has zero constant term");
    int n = std::min(a.degree(), b.degree());
    Series<K> q(n);
    for (int i = 0; i <= n; ++i) {
        K acc = a[i];
        for (int j = 0; j < i; ++j) acc = K(acc - q[j] * b[i - j]);
        q.coeff(i) = K(acc / b[0]);
    }
    return q;
}

/// Division with common-order cancellation: a/b where ord(a) >= ord(b).
/// Both are shifted down by ord(b), so the result loses ord(b) degrees
/// of truncation — those coefficients are genuinely undetermined.
template <class K>
Series<K> div_cancel(const Series<K>& a, const Series<K>& b, double tol = kDefaultTol) {
    auto ob = b.order(tol);
    if (!ob) fail("DivisionByNonUnit", "division by the zero series");
    if (*ob == 0) return div(a, b, tol);
    auto oa = a.order(tol);
    if (oa && *oa < *ob)
        fail("DivisionByNonUnit", "quotient is not a power series");
    Series<K> an = shift_down(a, *ob);
    Series<K> bn = shift_down(b, *ob);
    return div(an, bn, tol);
}

/// Substitute c*x for x: coefficient i picks up a factor c^i.
template <class K>
Series<K> subst_scale(const Series<K>& a, const K& c) {
    Series<K> r(a.degree());
    K p = field_ops<K>::one();
    for (int i = 0; i <= a.degree(); ++i) {
        r.coeff(i) = K(a[i] * p);
        p = K(p * c);
    }
    return r;
}

/// Composition h(F) for F with zero constant term, by Horner evaluation.
template <class K>
Series<K> compose(const Series<K>& h, const Series<K>& F, double tol = kDefaultTol) {
    if (!field_ops<K>::is_zero(F[0], tol))
        fail("CompositionRequiresZeroConstant", "inner series has nonzero constant term");
    int n = std::min(h.degree(), F.degree());
    Series<K> acc = Series<K>::constant(h[n], n);
    Series<K> f = truncate_to(F, n);
    for (int i = n - 1; i >= 0; --i) {
        acc = acc * f;
        acc.coeff(0) = K(acc[0] + h[i]);
    }
    return acc;
}

/// Compositional inverse of a delta series, by coefficient recursion:
/// the n-th coefficient is solved from F(R) = x degree by degree.
template <class K>
Series<K> comp_inverse(const Series<K>& F, double tol = kDefaultTol) {
    if (!F.is_delta(tol))
        fail("NotDelta", "compositional inverse requires a delta series");
    int n = F.degree();
    Series<K> r(n);
    r.coeff(1) = K(field_ops<K>::one() / F[1]);
    for (int m = 2; m <= n; ++m) {
        Series<K> s = compose(truncate_to(F, m), truncate_to(r, m), tol);
        r.coeff(m) = K(-(s[m] / F[1]));
    }
    return r;
}

/// Unique n-th multiplicative root with constant term 1 of a series with
/// constant term 1, by coefficient recursion on B^n = A.
template <class K>
Series<K> nth_root_unit(const Series<K>& a, unsigned n, double tol = kDefaultTol) {
    if (n == 0) fail("BadRootOrder", "0-th root");
    if (!field_ops<K>::eq(a[0], field_ops<K>::one(), tol))
        fail("ConstantTermNotOne", "root requires constant term 1");
    int N = a.degree();
    Series<K> b = Series<K>::constant(field_ops<K>::one(), N);
    K nk = field_ops<K>::from_long(long(n));
    for (int m = 1; m <= N; ++m) {
        Series<K> p = pow_u(truncate_to(b, m), n);
        b.coeff(m) = K((a[m] - p[m]) / nk);
    }
    return b;
}

/// k-th root of a series of exact order k along the branch b1 with
/// b1^k equal to the leading coefficient: B = b1 * x * Chat^(1/k).
/// The result is a delta series of truncation degree deg(c) - k + 1.
template <class K>
Series<K> nth_root_general(const Series<K>& c, unsigned k, const K& b1,
                           double tol = kDefaultTol) {
    if (k == 0) fail("BadRootOrder", "0-th root");
    auto ord = c.order(tol);
    if (!ord || *ord != int(k))
        fail("OrderMismatch", "series does not have exact order k");
    const K& ck = c[int(k)];
    if (!field_ops<K>::eq(field_pow(b1, k), ck, tol))
        fail("BadBranch", "branch does not satisfy b1^k = c_k");
    Series<K> low = shift_down(c, int(k));
    Series<K> chat(low.degree());
    for (int i = 0; i <= low.degree(); ++i) chat.coeff(i) = K(low[i] / ck);
    Series<K> root = nth_root_unit(chat, k, tol);
    return b1 * shift_up(root, 1);
}

// ---- order certificates -------------------------------------------------

/// Certificate for multiplicative/compositional order questions. Both are
/// decided against the stored truncation: a finite compositional order is
/// always "at truncation N", while a hybrid certificate is definitive
/// (the defect is visible at a retained degree).
struct OrderCertificate {
    enum class Kind {
        FiniteMultOrder,
        InfiniteMultOrder,
        FiniteCompOrderAtTrunc,
        HybridCertified,
        UndeterminedAtTrunc,
    };
    Kind kind = Kind::UndeterminedAtTrunc;
    unsigned n = 0;          // the order (or the mult order of f1 for hybrids)
    int trunc_degree = 0;
    unsigned search_bound = 0;

    bool finite_comp() const { return kind == Kind::FiniteCompOrderAtTrunc; }
    bool hybrid() const { return kind == Kind::HybridCertified; }

    std::string kind_name() const {
        switch (kind) {
            case Kind::FiniteMultOrder: return "FiniteMultOrder";
            case Kind::InfiniteMultOrder: return "InfiniteMultOrder";
            case Kind::FiniteCompOrderAtTrunc: return "FiniteCompOrderAtTrunc";
            case Kind::HybridCertified: return "HybridCertified";
            case Kind::UndeterminedAtTrunc: return "UndeterminedAtTrunc";
        }
        return "?";
    }
};

inline constexpr unsigned kDefaultOrderBound = 64;

/// Smallest n <= bound with a^n = 1. Over Q only +-1 are roots of unity,
/// so anything else is certified of infinite order by magnitude; over C
/// the search is tolerance-based and |a| != 1 certifies infinite order.
template <class K>
OrderCertificate mult_order(const K& a, unsigned bound = kDefaultOrderBound,
                            double tol = kDefaultTol) {
    OrderCertificate cert;
    cert.search_bound = bound;
    if (field_ops<K>::is_zero(a, tol)) fail("ZeroElement", "order of zero");
    if constexpr (field_ops<K>::exact) {
        // the only roots of unity in Q are +-1
        const K one = field_ops<K>::one();
        if (field_ops<K>::eq(a, one, tol)) {
            cert.kind = OrderCertificate::Kind::FiniteMultOrder;
            cert.n = 1;
        } else if (field_ops<K>::eq(a, K(-one), tol) && bound >= 2) {
            cert.kind = OrderCertificate::Kind::FiniteMultOrder;
            cert.n = 2;
        } else {
            cert.kind = OrderCertificate::Kind::InfiniteMultOrder;
        }
        return cert;
    }
    K p = a;
    for (unsigned n = 1; n <= bound; ++n) {
        if (field_ops<K>::eq(p, field_ops<K>::one(), tol)) {
            cert.kind = OrderCertificate::Kind::FiniteMultOrder;
            cert.n = n;
            return cert;
        }
        p = K(p * a);
    }
    if (std::fabs(field_ops<K>::abs_approx(a) - 1.0) > tol)
        cert.kind = OrderCertificate::Kind::InfiniteMultOrder;
    else
        cert.kind = OrderCertificate::Kind::UndeterminedAtTrunc;
    return cert;
}

/// n-fold self-composition.
template <class K>
Series<K> compose_iterate(const Series<K>& F, unsigned n, double tol = kDefaultTol) {
    Series<K> g = Series<K>::x(F.degree());
    for (unsigned j = 0; j < n; ++j) g = compose(F, g, tol);
    return g;
}

/// Compositional-order certificate for a delta series F.
///
/// With n the multiplicative order of f1, the only candidate compositional
/// order is n. A lowest non-linear term at index s with s = 1 (mod n)
/// forces a degree-s defect in the n-fold composite, so the hybrid verdict
/// is certified without composing; otherwise the n-fold composite is
/// compared with x through the truncation degree.
template <class K>
OrderCertificate comp_order(const Series<K>& F, unsigned bound = kDefaultOrderBound,
                            double tol = kDefaultTol) {
    if (!F.is_delta(tol)) fail("NotDelta", "compositional order requires a delta series");
    OrderCertificate cert;
    cert.trunc_degree = F.degree();
    cert.search_bound = bound;

    OrderCertificate mo = mult_order(F[1], bound, tol);
    if (mo.kind == OrderCertificate::Kind::InfiniteMultOrder) {
        cert.kind = OrderCertificate::Kind::InfiniteMultOrder;
        return cert;
    }
    if (mo.kind == OrderCertificate::Kind::UndeterminedAtTrunc) {
        cert.kind = OrderCertificate::Kind::UndeterminedAtTrunc;
        return cert;
    }
    unsigned n = mo.n;
    cert.n = n;

    int s = -1;
    for (int i = 2; i <= F.degree(); ++i) {
        if (!field_ops<K>::is_zero(F[i], tol)) {
            s = i;
            break;
        }
    }
    if (s < 0) {
        // F = f1*x exactly at truncation: composite is f1^n x = x.
        cert.kind = OrderCertificate::Kind::FiniteCompOrderAtTrunc;
        return cert;
    }
    if (unsigned(s - 1) % n == 0) {
        cert.kind = OrderCertificate::Kind::HybridCertified;
        return cert;
    }
    Series<K> it = compose_iterate(F, n, tol);
    if (series_eq(it, Series<K>::x(F.degree()), tol))
        cert.kind = OrderCertificate::Kind::FiniteCompOrderAtTrunc;
    else
        cert.kind = OrderCertificate::Kind::HybridCertified;
    return cert;
}

} // namespace rdn
