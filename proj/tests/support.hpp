#pragma once

// Shared test helpers: deterministic generators for series and Riordan
// pairs, plus independent oracles (brute-force composition, a dense
// Gaussian eigen-solver, binomial tables) that must stay decoupled from
// the library code paths they check.

#include <optional>
#include <random>
#include <vector>

#include "rdn/eigen.hpp"
#include "rdn/matrix.hpp"
#include "rdn/riordan.hpp"
#include "rdn/series.hpp"

namespace testutil {

using rdn::Matrix;
using rdn::Rat;
using rdn::RiordanPair;
using rdn::Series;

using Rng = std::mt19937_64;

inline Rat rand_rat(Rng& rng, long lo = -4, long hi = 4, long max_den = 3) {
    std::uniform_int_distribution<long> num(lo, hi);
    std::uniform_int_distribution<long> den(1, max_den);
    return rdn::rat(num(rng), den(rng));
}

inline Rat rand_rat_nonzero(Rng& rng, long lo = -4, long hi = 4, long max_den = 3) {
    for (;;) {
        Rat q = rand_rat(rng, lo, hi, max_den);
        if (sgn(q) != 0) return q;
    }
}

inline Series<Rat> rand_series(Rng& rng, int deg) {
    Series<Rat> s(deg);
    for (int i = 0; i <= deg; ++i) s.coeff(i) = rand_rat(rng);
    return s;
}

inline Series<Rat> rand_unit(Rng& rng, int deg) {
    Series<Rat> s = rand_series(rng, deg);
    s.coeff(0) = rand_rat_nonzero(rng);
    return s;
}

inline Series<Rat> rand_delta(Rng& rng, int deg) {
    Series<Rat> s = rand_series(rng, deg);
    s.coeff(0) = 0;
    s.coeff(1) = rand_rat_nonzero(rng);
    return s;
}

/// Delta series with a prescribed linear coefficient.
inline Series<Rat> rand_delta_with_f1(Rng& rng, int deg, const Rat& f1) {
    Series<Rat> s = rand_delta(rng, deg);
    s.coeff(1) = f1;
    return s;
}

inline RiordanPair<Rat> rand_pair(Rng& rng, int deg) {
    return RiordanPair<Rat>(rand_unit(rng, deg), rand_delta(rng, deg));
}

// ---- brute-force composition oracle ------------------------------------
// [x^n] h(F) = sum over all compositions j_1+...+j_i = n (each j >= 1) of
// h_i * f_{j_1} * ... * f_{j_i}; independent of the Horner path.

template <class K>
void compose_parts(const Series<K>& h, const Series<K>& F, int n, int remaining,
                   int depth, const K& partial, K& acc) {
    if (remaining == 0) {
        if (depth >= 1 && depth <= h.degree())
            acc = K(acc + h[depth] * partial);
        return;
    }
    for (int j = 1; j <= remaining; ++j)
        compose_parts(h, F, n, remaining - j, depth + 1, K(partial * F[j]), acc);
}

template <class K>
Series<K> compose_bruteforce(const Series<K>& h, const Series<K>& F) {
    int n = std::min(h.degree(), F.degree());
    Series<K> r(n);
    r.coeff(0) = h[0];
    for (int m = 1; m <= n; ++m) {
        K acc = rdn::field_ops<K>::zero();
        compose_parts(h, F, m, m, 0, rdn::field_ops<K>::one(), acc);
        r.coeff(m) = acc;
    }
    return r;
}

// ---- dense Gaussian eigen-solver oracle ---------------------------------
// Solves (T - lambda*I) h = 0 with h_j = 0 for j < k and h_k = 1 by full
// Gauss-Jordan elimination over the exact field. Independent of the
// forward-substitution solver in the library.

inline std::optional<std::vector<Rat>> dense_level_solve(const Matrix<Rat>& T, int k,
                                                         const Rat& lambda) {
    int n = T.size();
    int vars = n - k - 1; // unknowns h_{k+1}..h_{n-1}
    // rows: every matrix row, columns: unknowns, last column: rhs
    std::vector<std::vector<Rat>> aug(size_t(n), std::vector<Rat>(size_t(vars) + 1, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = k + 1; j < n; ++j) {
            Rat c = T(i, j);
            if (i == j) c -= lambda;
            aug[size_t(i)][size_t(j - k - 1)] = c;
        }
        Rat rhs = (i >= k) ? Rat(T(i, k)) : Rat(0);
        if (i == k) rhs -= lambda;
        aug[size_t(i)][size_t(vars)] = -rhs;
    }
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < vars && row < n; ++col) {
        int p = -1;
        for (int i = row; i < n; ++i)
            if (sgn(aug[size_t(i)][size_t(col)]) != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(aug[size_t(row)], aug[size_t(p)]);
        Rat inv = 1 / aug[size_t(row)][size_t(col)];
        for (int j = col; j <= vars; ++j) aug[size_t(row)][size_t(j)] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            Rat f = aug[size_t(i)][size_t(col)];
            if (sgn(f) == 0) continue;
            for (int j = col; j <= vars; ++j)
                aug[size_t(i)][size_t(j)] -= f * aug[size_t(row)][size_t(j)];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < n; ++i)
        if (sgn(aug[size_t(i)][size_t(vars)]) != 0) return std::nullopt;
    std::vector<Rat> h(size_t(n), Rat(0));
    h[size_t(k)] = 1;
    for (int r = 0; r < row; ++r)
        h[size_t(k + 1 + pivot_col[size_t(r)])] = aug[size_t(r)][size_t(vars)];
    return h;
}

// ---- binomial oracle ----------------------------------------------------

inline std::vector<std::vector<Rat>> binomial_table(int n) {
    std::vector<std::vector<Rat>> b(size_t(n) + 1);
    for (int i = 0; i <= n; ++i) {
        b[size_t(i)].assign(size_t(i) + 1, Rat(1));
        for (int j = 1; j < i; ++j)
            b[size_t(i)][size_t(j)] = b[size_t(i) - 1][size_t(j) - 1] + b[size_t(i) - 1][size_t(j)];
    }
    return b;
}

// ---- handy exact constructors -------------------------------------------

/// 1/(1-c x) at the given degree.
inline Series<Rat> geometric(const Rat& c, int deg) {
    Series<Rat> s(deg);
    Rat p(1);
    for (int i = 0; i <= deg; ++i) {
        s.coeff(i) = p;
        p *= c;
    }
    return s;
}

inline RiordanPair<Rat> pascal_pair(int deg) {
    Series<Rat> g = geometric(Rat(1), deg);
    return RiordanPair<Rat>(g, rdn::shift_up(rdn::truncate_to(g, deg - 1), 1));
}

/// Random delta series of finite compositional order 2: a conjugate of -x.
inline Series<Rat> rand_involution(Rng& rng, int deg) {
    Series<Rat> theta = rand_delta(rng, deg);
    return rdn::compose(rdn::comp_inverse(theta), -theta);
}

/// Random pseudo-involution: (u(L)/u, -L) for a compositional involution
/// L and a random unit u, so that (g, -L)(1, -x) squares to the identity.
inline RiordanPair<Rat> rand_pseudo_involution(Rng& rng, int deg) {
    Series<Rat> L = rand_involution(rng, deg);
    Series<Rat> u = rand_unit(rng, deg);
    Series<Rat> g = rdn::div(rdn::compose(u, L), u);
    return RiordanPair<Rat>(g, -L);
}

/// g = (1 + x - sqrt(1 - 2x - 3x^2)) / (2x): the generating function of
/// the directed-animal triangle (g, xg).
inline Series<Rat> aigner_g(int deg) {
    Series<Rat> radicand(deg + 1);
    radicand.coeff(0) = 1;
    radicand.coeff(1) = -2;
    radicand.coeff(2) = -3;
    Series<Rat> root = rdn::nth_root_unit(radicand, 2);
    Series<Rat> num(deg + 1);
    num.coeff(0) = 1;
    num.coeff(1) = 1;
    num = num - root;
    return rdn::rat(1, 2) * rdn::shift_down(num, 1);
}

inline RiordanPair<Rat> aigner_pair(int deg) {
    Series<Rat> g = aigner_g(deg);
    return RiordanPair<Rat>(g, rdn::shift_up(rdn::truncate_to(g, deg - 1), 1));
}

/// Random certified-hybrid delta series (linear coefficient +-1).
inline Series<Rat> rand_hybrid(Rng& rng, int deg) {
    std::uniform_int_distribution<int> coin(0, 1);
    Series<Rat> F = rand_delta(rng, deg);
    if (coin(rng)) {
        // f1 = 1 with some nonlinear term: always hybrid
        F.coeff(1) = 1;
        F.coeff(2) = rand_rat_nonzero(rng);
    } else {
        // f1 = -1 with a term at an odd index: defect at that index
        F.coeff(1) = -1;
        F.coeff(2) = 0;
        F.coeff(3) = rand_rat_nonzero(rng);
    }
    return F;
}

/// Random eigenvector seed of exact level k, normalized h_k = 1.
inline Series<Rat> rand_level_seed(Rng& rng, int deg, int k) {
    Series<Rat> h = rand_series(rng, deg);
    for (int i = 0; i < k; ++i) h.coeff(i) = 0;
    h.coeff(k) = 1;
    return h;
}

// ---- structured eigen corpus ----------------------------------------------

struct CorpusEntry {
    RiordanPair<Rat> A;
    rdn::EigenVerdict expected;
    int level; // expected level when verdict is Level, else -1
    const char* kind;
};

/// Deterministic mix of pairs covering every classification branch. The
/// seeds are generated a few degrees above `deg` so every entry still
/// carries at least `deg` coefficients after the constructors.
inline std::vector<CorpusEntry> eigen_corpus(Rng& rng, int count, int deg) {
    using rdn::EigenVerdict;
    std::vector<CorpusEntry> out;
    int hi = deg + 6;
    std::uniform_int_distribution<int> level_dist(0, 3);
    std::uniform_int_distribution<long> small(1, 3);
    while (int(out.size()) < count) {
        switch (out.size() % 8) {
            case 0: { // f1 of infinite multiplicative order
                Series<Rat> F = rand_delta(rng, deg);
                F.coeff(1) = Rat(small(rng) + 1); // 2..4
                out.push_back({RiordanPair<Rat>(rand_unit(rng, deg), F),
                               EigenVerdict::Full, -1, "infinite-order"});
                break;
            }
            case 1: { // full set with finite-order F, via the constructor
                int k = level_dist(rng);
                Series<Rat> F = rand_involution(rng, hi);
                Series<Rat> h = rand_level_seed(rng, hi, k);
                auto A = rdn::construct_full(rand_rat_nonzero(rng), F, h, k);
                out.push_back({A, EigenVerdict::Full, -1, "finite-order-full"});
                break;
            }
            case 2: { // hybrid with a single eigenvector level
                int k = level_dist(rng);
                Series<Rat> F = rand_hybrid(rng, hi);
                Series<Rat> h = rand_level_seed(rng, hi, k);
                auto A = rdn::construct_level_k(rand_rat_nonzero(rng), F, h, k);
                out.push_back({A, EigenVerdict::Level, k, "hybrid-level-k"});
                break;
            }
            case 3: { // no eigenvectors despite finite compositional order
                int r = 2 * int(small(rng)); // even: f1^r = 1 for f1 = -1
                Series<Rat> tail = rand_series(rng, deg);
                for (int i = 0; i <= r; ++i) tail.coeff(i) = 0;
                tail.coeff(r) = rand_rat_nonzero(rng);
                auto A = rdn::construct_none(rand_involution(rng, deg), r, tail);
                out.push_back({A, EigenVerdict::NoEigenvectors, -1, "none-finite-order"});
                break;
            }
            case 4: { // hybrid with no eigenvectors (leading-coefficient gap)
                int s = 4 + int(small(rng));
                int r = int(small(rng));
                if (r >= s - 1) r = s - 2;
                Series<Rat> F(deg);
                F.coeff(1) = 1;
                F.coeff(s) = rand_rat_nonzero(rng);
                for (int i = s + 1; i <= deg; ++i) F.coeff(i) = rand_rat(rng);
                Series<Rat> g(deg);
                g.coeff(0) = 1;
                g.coeff(r) = rand_rat_nonzero(rng);
                for (int i = r + 1; i <= deg; ++i) g.coeff(i) = rand_rat(rng);
                out.push_back({RiordanPair<Rat>(g, F), EigenVerdict::NoEigenvectors, -1,
                               "hybrid-none"});
                break;
            }
            case 5: { // constant g over a hybrid F: primary level only
                Series<Rat> F = rand_hybrid(rng, deg);
                auto A = RiordanPair<Rat>(
                    Series<Rat>::constant(rand_rat_nonzero(rng), deg), F);
                out.push_back({A, EigenVerdict::Level, 0, "constant-g-hybrid"});
                break;
            }
            case 6: { // diagonal F with the unit product telescoping to 1
                Series<Rat> u = rand_unit(rng, deg);
                u.coeff(0) = 1;
                Series<Rat> ghat = rdn::div(rdn::subst_scale(u, Rat(-1)), u);
                auto A = RiordanPair<Rat>(rand_rat_nonzero(rng) * ghat,
                                          -Series<Rat>::x(deg));
                out.push_back({A, EigenVerdict::Full, -1, "diagonal-f-full"});
                break;
            }
            default: { // diagonal F with an obstructed unit product
                Series<Rat> g(deg);
                g.coeff(0) = 1;
                g.coeff(2) = rand_rat_nonzero(rng);
                g.coeff(4) = rand_rat(rng);
                out.push_back({RiordanPair<Rat>(g, -Series<Rat>::x(deg)),
                               EigenVerdict::NoEigenvectors, -1, "diagonal-f-none"});
                break;
            }
        }
    }
    return out;
}

} // namespace testutil
