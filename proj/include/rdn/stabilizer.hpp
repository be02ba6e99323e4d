#pragma once

// Stabilizer subgroup of a target vector h: which pairs (g, F) satisfy
// (g,F) h = h. The admissible g are pinned by the shape of h, and F is
// recovered from g through the H/D construction, one solution per field
// root of the branch constant.

#include <vector>

#include "rdn/errors.hpp"
#include "rdn/riordan.hpp"
#include "rdn/series.hpp"

namespace rdn {

/// Target vector: h = h0 + h_k x^k + ... with k the least positive index
/// carrying a nonzero coefficient (k = -1 when h is constant).
template <class K>
struct TargetVector {
    Series<K> h;
    K h0{};
    int k = -1;
};

template <class K>
TargetVector<K> make_target(const Series<K>& h, double tol = kDefaultTol) {
    TargetVector<K> t{h, h[0], -1};
    for (int i = 1; i <= h.degree(); ++i) {
        if (!field_ops<K>::is_zero(h[i], tol)) {
            t.k = i;
            break;
        }
    }
    if (t.k < 0 && field_ops<K>::is_zero(t.h0, tol))
        fail("ZeroElement", "target vector must be nonzero");
    return t;
}

/// H with h = h0 + h_k H^k and H = x (1 + sum h_{k+i}/h_k x^i)^(1/k).
/// Carries degree deg(h) - k + 1.
template <class K>
Series<K> extract_H(const TargetVector<K>& t, double tol = kDefaultTol) {
    if (t.k < 0) fail("NoSecondEntry", "target has no entry beyond the constant");
    const K& hk = t.h[t.k];
    Series<K> tail(t.h.degree());
    for (int i = 1; i <= t.h.degree(); ++i) tail.coeff(i) = K(t.h[i] / hk);
    return nth_root_general(tail, unsigned(t.k), field_ops<K>::one(), tol);
}

/// Admissible shapes of g: g = 1 + sum_{n>=k} g_n x^n when h0 != 0, and
/// g = g0 + sum_{n>=k} g_n x^n when h0 = 0. No other g stabilizes h.
template <class K>
bool admissible_g_check(const Series<K>& g, const TargetVector<K>& t,
                        double tol = kDefaultTol) {
    if (!g.is_unit(tol)) return false;
    if (t.k < 0) return false;
    bool h0_zero = field_ops<K>::is_zero(t.h0, tol);
    if (!h0_zero && !field_ops<K>::eq(g[0], field_ops<K>::one(), tol)) return false;
    for (int i = 1; i < t.k && i <= g.degree(); ++i)
        if (!field_ops<K>::is_zero(g[i], tol)) return false;
    return true;
}

/// The k-th power of the root branch: (h_k - h0 g_k)/h_k for h0 != 0,
/// 1/g0 for h0 = 0.
template <class K>
K branch_constant(const Series<K>& g, const TargetVector<K>& t,
                  double tol = kDefaultTol) {
    if (field_ops<K>::is_zero(t.h0, tol))
        return K(field_ops<K>::one() / g[0]);
    const K& hk = t.h[t.k];
    K gk = (t.k <= g.degree()) ? g[t.k] : field_ops<K>::zero();
    return K((hk - t.h0 * gk) / hk);
}

template <class K>
struct StabilizerSolution {
    RiordanPair<K> pair;
    K f1_branch{};
    Series<K> D;
};

/// F = Hbar(D) with D = (h_k^{-1} (h/g - h0))^{1/k} along the given root
/// branch. The result is verified against the defining equation
/// (g,F) h = h through the carried truncation.
template <class K>
StabilizerSolution<K> stabilizer_F(const Series<K>& g, const TargetVector<K>& t,
                                   const K& branch, double tol = kDefaultTol) {
    if (!admissible_g_check(g, t, tol))
        fail("PreconditionViolated", "g does not match the admissible shape");
    K target = branch_constant(g, t, tol);
    if (field_ops<K>::is_zero(target, tol))
        fail("DegenerateD", "branch constant vanishes: F would lose its linear term");
    if (!field_ops<K>::eq(field_pow(branch, unsigned(t.k)), target, tol))
        fail("BadBranch", "branch^k does not match the target constant");

    int deg = std::min(g.degree(), t.h.degree());
    Series<K> c = div(truncate_to(t.h, deg), truncate_to(g, deg), tol);
    c.coeff(0) = K(c[0] - t.h0);
    Series<K> scaled(deg);
    const K& hk = t.h[t.k];
    for (int i = 0; i <= deg; ++i) scaled.coeff(i) = K(c[i] / hk);
    auto ord = scaled.order(tol);
    if (!ord || *ord != t.k)
        fail("DegenerateD", "h/g - h0 does not have exact order k");
    Series<K> D = nth_root_general(scaled, unsigned(t.k), branch, tol);

    Series<K> H = extract_H(t, tol);
    Series<K> Hbar = comp_inverse(H, tol);
    Series<K> F = compose(Hbar, D, tol);

    RiordanPair<K> pair(truncate_to(g, F.degree()), F, tol);
    Series<K> hcut = truncate_to(t.h, F.degree());
    if (!series_eq(apply(pair, hcut, tol), hcut, tol))
        fail("PreconditionViolated", "stabilizer equation failed verification");
    return {pair, branch, D};
}

/// Every solution over g: one per field k-th root of the branch constant.
/// |S_g| <= k always; exactly k over C with a nonzero constant.
template <class K>
std::vector<StabilizerSolution<K>> enumerate_S_g(const Series<K>& g,
                                                 const TargetVector<K>& t,
                                                 double tol = kDefaultTol) {
    std::vector<StabilizerSolution<K>> out;
    if (!admissible_g_check(g, t, tol))
        fail("PreconditionViolated", "g does not match the admissible shape");
    K target = branch_constant(g, t, tol);
    if (field_ops<K>::is_zero(target, tol)) return out;
    for (const K& root : field_kth_roots<K>(target, unsigned(t.k)))
        out.push_back(stabilizer_F(g, t, root, tol));
    return out;
}

/// Monomial targets h = h_k x^k: the closed family (g, f1 x g^{-1/k})
/// over the field k-th roots of 1/g0.
template <class K>
std::vector<StabilizerSolution<K>> monomial_stabilizers(const TargetVector<K>& t,
                                                        const Series<K>& g,
                                                        double tol = kDefaultTol) {
    if (t.k < 1 || !field_ops<K>::is_zero(t.h0, tol))
        fail("NotMonomial", "target must be h_k x^k with k >= 1");
    for (int i = t.k + 1; i <= t.h.degree(); ++i)
        if (!field_ops<K>::is_zero(t.h[i], tol))
            fail("NotMonomial", "target must have a single nonzero entry");
    if (!g.is_unit(tol)) fail("PreconditionViolated", "g must be a unit series");

    std::vector<StabilizerSolution<K>> out;
    Series<K> ghat(g.degree());
    for (int i = 0; i <= g.degree(); ++i) ghat.coeff(i) = K(g[i] / g[0]);
    Series<K> ghat_root = nth_root_unit(ghat, unsigned(t.k), tol);
    Series<K> one = Series<K>::constant(field_ops<K>::one(), g.degree());
    Series<K> inv_root = div(one, ghat_root, tol);

    K inv_g0 = K(field_ops<K>::one() / g[0]);
    for (const K& beta : field_kth_roots<K>(inv_g0, unsigned(t.k))) {
        Series<K> F = beta * shift_up(truncate_to(inv_root, g.degree() - 1), 1);
        RiordanPair<K> pair(g, F, tol);
        Series<K> hcut = truncate_to(t.h, pair.degree());
        if (!series_eq(apply(pair, hcut, tol), hcut, tol))
            fail("PreconditionViolated", "stabilizer equation failed verification");
        out.push_back({pair, beta, F});
    }
    return out;
}

} // namespace rdn
