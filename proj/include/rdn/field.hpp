#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rdn/errors.hpp"

namespace rdn {

/// Exact coefficient field: rationals with arbitrary-precision
/// numerator/denominator. GMP keeps values canonical (lowest terms,
/// positive denominator) through arithmetic; only raw two-argument
/// construction needs an explicit canonicalize, which rat() does.
using Rat = mpq_class;

/// Approximate coefficient field: complex double precision. All equality
/// queries against it take an explicit tolerance.
using Cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

inline Rat rat(long num, long den = 1) {
    if (den == 0) fail("ZeroDenominator", "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_from_string(const std::string& text) {
    Rat q;
    if (q.set_str(text, 10) != 0)
        fail("BadRational", "cannot parse rational '" + text + "'");
    q.canonicalize();
    return q;
}

/// Field trait bundle: the series/matrix code is generic over the
/// coefficient field through these hooks.
template <class K>
struct field_ops;

template <>
struct field_ops<Rat> {
    static constexpr bool exact = true;

    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_long(long v) { return Rat(v); }
    static Rat from_rat(const Rat& q) { return q; }

    static bool eq(const Rat& a, const Rat& b, double) { return a == b; }
    static bool is_zero(const Rat& a, double) { return sgn(a) == 0; }

    static double abs_approx(const Rat& a) { return std::fabs(a.get_d()); }

    static std::string str(const Rat& a) { return a.get_str(); }
};

template <>
struct field_ops<Cplx> {
    static constexpr bool exact = false;

    static Cplx zero() { return Cplx(0.0, 0.0); }
    static Cplx one() { return Cplx(1.0, 0.0); }
    static Cplx from_long(long v) { return Cplx(double(v), 0.0); }
    static Cplx from_rat(const Rat& q) { return Cplx(q.get_d(), 0.0); }

    static bool eq(const Cplx& a, const Cplx& b, double tol) {
        return std::abs(a - b) <= tol;
    }
    static bool is_zero(const Cplx& a, double tol) { return std::abs(a) <= tol; }

    static double abs_approx(const Cplx& a) { return std::abs(a); }

    static std::string str(const Cplx& a) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", a.real(), a.imag());
        return buf;
    }
};

/// Integer power with non-negative exponent; works for both fields.
template <class K>
K field_pow(const K& base, unsigned long e) {
    K acc = field_ops<K>::one();
    K b = base;
    while (e != 0) {
        if (e & 1u) acc = K(acc * b);
        b = K(b * b);
        e >>= 1u;
    }
    return acc;
}

// ---- exact k-th roots of rationals ------------------------------------

/// Exact integer k-th root: returns true and sets root when v is a perfect
/// k-th power (negative v allowed for odd k).
inline bool integer_kth_root(const mpz_class& v, unsigned k, mpz_class& root) {
    if (k == 0) return false;
    if (sgn(v) < 0 && k % 2 == 0) return false;
    mpz_class r;
    int exact = mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
    if (!exact) return false;
    root = r;
    return true;
}

/// All k-th roots of a rational that exist inside Q itself: none, one
/// (odd k, or zero), or a +/- pair (even k with a perfect-power value).
inline std::vector<Rat> rational_kth_roots(const Rat& value, unsigned k) {
    std::vector<Rat> roots;
    if (k == 0) return roots;
    if (sgn(value) == 0) {
        roots.push_back(Rat(0));
        return roots;
    }
    if (sgn(value) < 0 && k % 2 == 0) return roots;
    mpz_class num = value.get_num(), den = value.get_den();
    mpz_class rn, rd;
    if (!integer_kth_root(num, k, rn)) return roots;
    if (!integer_kth_root(den, k, rd)) return roots;
    Rat r(rn, rd);
    r.canonicalize();
    roots.push_back(r);
    if (k % 2 == 0) roots.push_back(Rat(-r));
    return roots;
}

/// All k-th roots available in the field: exact enumeration over Q,
/// the full set of k complex roots over C.
template <class K>
std::vector<K> field_kth_roots(const K& value, unsigned k);

template <>
inline std::vector<Rat> field_kth_roots<Rat>(const Rat& value, unsigned k) {
    return rational_kth_roots(value, k);
}

template <>
inline std::vector<Cplx> field_kth_roots<Cplx>(const Cplx& value, unsigned k) {
    std::vector<Cplx> roots;
    if (k == 0) return roots;
    double r = std::abs(value);
    if (r == 0.0) {
        roots.emplace_back(0.0, 0.0);
        return roots;
    }
    double phi = std::arg(value);
    double rk = std::pow(r, 1.0 / double(k));
    for (unsigned j = 0; j < k; ++j) {
        double a = (phi + 2.0 * M_PI * double(j)) / double(k);
        roots.push_back(std::polar(rk, a));
    }
    return roots;
}

/// k-th roots of unity present in the field.
template <class K>
std::vector<K> field_roots_of_unity(unsigned k) {
    return field_kth_roots<K>(field_ops<K>::one(), k);
}

} // namespace rdn
