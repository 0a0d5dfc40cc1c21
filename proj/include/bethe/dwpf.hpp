#pragma once

#include <functional>
#include <vector>

#include "bethe/config.hpp"
#include "bethe/eps.hpp"
#include "bethe/kernels.hpp"
#include "bethe/matrix.hpp"
#include "bethe/partitions.hpp"

namespace bethe {

// Domain-wall partition function
//   K_n(u|v) = Delta'(u) Delta(v) h(u,v) det_n t(u_j, v_k),   K_0 = 1.
template <class F>
F K(const ParamSet<F>& us, const ParamSet<F>& vs, const KernelCtx<F>& kc) {
    if (us.size() != vs.size())
        throw CardinalityMismatchError("K needs equal cardinalities, got " +
                                       std::to_string(us.size()) + " and " +
                                       std::to_string(vs.size()));
    const size_t n = us.size();
    if (n == 0) return F::one();
    Matrix<F> m(n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) m.at(j, k) = kc.t(us[j], vs[k]);
    return kc.delta_prime(us) * kc.delta(vs) * kc.hprod(us, vs) * det_exact(std::move(m));
}

// sum over w = {w_I (m1), w_II (m2)} of g(w_I,u) g(w_II,v) g(w_II,w_I)
//   = g(w,u) g(w,v) / g(u,v)
template <class F>
bool lemma_gg_check(const ParamSet<F>& ws, const ParamSet<F>& us, const ParamSet<F>& vs,
                    const KernelCtx<F>& kc) {
    const int m1 = static_cast<int>(us.size());
    const int m2 = static_cast<int>(vs.size());
    if (static_cast<int>(ws.size()) != m1 + m2)
        throw CardinalityMismatchError("gg lemma needs #w = #u + #v");
    F lhs = F::zero();
    for (Splits s(m1 + m2, m1); !s.done(); s.advance()) {
        auto [wI, wII] = split_set(ws, s.get());
        lhs = lhs + kc.gprod(wI, us) * kc.gprod(wII, vs) * kc.gprod(wII, wI);
    }
    F rhs = kc.gprod(ws, us) * kc.gprod(ws, vs) / kc.gprod(us, vs);
    return lhs == rhs;
}

// sum over w = {w_I (m1), w_II (m2)} of K_{m1}(w_I|u) K_{m2}(v|w_II) f(w_II,w_I)
//   = (-1)^{m1} f(w,u) K_{m1+m2}({u-c, v}|w)
template <class F>
bool lemma_KK_check(const ParamSet<F>& ws, const ParamSet<F>& us, const ParamSet<F>& vs,
                    const KernelCtx<F>& kc) {
    const int m1 = static_cast<int>(us.size());
    const int m2 = static_cast<int>(vs.size());
    if (static_cast<int>(ws.size()) != m1 + m2)
        throw CardinalityMismatchError("KK lemma needs #w = #u + #v");
    F lhs = F::zero();
    for (Splits s(m1 + m2, m1); !s.done(); s.advance()) {
        auto [wI, wII] = split_set(ws, s.get());
        lhs = lhs + K(wI, us, kc) * K(vs, wII, kc) * kc.fprod(wII, wI);
    }
    ParamSet<F> shifted = ParamSet<F>::join(us.shifted(-kc.c), vs);
    F rhs = kc.fprod(ws, us) * K(shifted, ws, kc);
    if (m1 % 2 == 1) rhs = -rhs;
    return lhs == rhs;
}

// sum over all 2^m splits w = {w_I, w_II} of
//   K_m({w_I - c, w_II}|xi) f(xi,w_I) f(w_II,w_I) C1(w_I) C2(w_II)
//   = Delta'(xi) Delta(w) det_m[ C2(w_k) t(w_k,xi_j) h(w_k,xi)
//                                + (-1)^m C1(w_k) t(xi_j,w_k) h(xi,w_k) ]
// C1 and C2 are arbitrary value tables on the points of w, passed as
// vectors aligned with w.
template <class F>
bool lemma_longdet_check(const ParamSet<F>& ws, const ParamSet<F>& xis, const std::vector<F>& C1,
                         const std::vector<F>& C2, const KernelCtx<F>& kc) {
    const int m = static_cast<int>(ws.size());
    if (xis.size() != ws.size())
        throw CardinalityMismatchError("long determinant lemma needs #w = #xi");
    if (C1.size() != ws.size() || C2.size() != ws.size())
        throw CardinalityMismatchError("value tables must align with w");

    F lhs = F::zero();
    for (int k = 0; k <= m; ++k) {
        for (Splits s(m, k); !s.done(); s.advance()) {
            auto [wI, wII] = split_set(ws, s.get());
            F cprod = F::one();
            for (int j : s.get().first) cprod = cprod * C1[static_cast<size_t>(j)];
            for (int j : s.get().second) cprod = cprod * C2[static_cast<size_t>(j)];
            ParamSet<F> merged = ParamSet<F>::join(wI.shifted(-kc.c), wII);
            lhs = lhs + K(merged, xis, kc) * kc.fprod(xis, wI) * kc.fprod(wII, wI) * cprod;
        }
    }

    Matrix<F> mat(static_cast<size_t>(m), static_cast<size_t>(m));
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            F term1 = C2[static_cast<size_t>(k)] * kc.t(ws[static_cast<size_t>(k)], xis[static_cast<size_t>(j)]) *
                      kc.hprod(ws[static_cast<size_t>(k)], xis);
            F term2 = C1[static_cast<size_t>(k)] * kc.t(xis[static_cast<size_t>(j)], ws[static_cast<size_t>(k)]) *
                      kc.hprod(xis, ws[static_cast<size_t>(k)]);
            if (m % 2 == 1) term2 = -term2;
            mat.at(static_cast<size_t>(j), static_cast<size_t>(k)) = term1 + term2;
        }
    F rhs = kc.delta_prime(xis) * kc.delta(ws) * det_exact(std::move(mat));
    return lhs == rhs;
}

// Row stacking: for an a x (a+b) table A and a b x (a+b) table B over the
// points of x,
//   sum over x = {x_I (a), x_II (b)} of g(x_II,x_I)
//       Delta(x_I) det_a A_j(x_I_k)  Delta(x_II) det_b B_j(x_II_k)
//   = Delta(x) det_{a+b} of A stacked over B.
// A(j, x) and B(j, x) are entry generators in a row index and a point.
template <class F, class GenA, class GenB>
bool row_stack_check(GenA A, GenB B, const ParamSet<F>& xs, int a, int b,
                     const KernelCtx<F>& kc) {
    if (static_cast<int>(xs.size()) != a + b)
        throw CardinalityMismatchError("row stacking needs #x = a + b");

    F lhs = F::zero();
    for (Splits s(a + b, a); !s.done(); s.advance()) {
        auto [xI, xII] = split_set(xs, s.get());
        Matrix<F> ma(static_cast<size_t>(a), static_cast<size_t>(a));
        for (int j = 0; j < a; ++j)
            for (int k = 0; k < a; ++k) ma.at(j, k) = A(j, xI[static_cast<size_t>(k)]);
        Matrix<F> mb(static_cast<size_t>(b), static_cast<size_t>(b));
        for (int j = 0; j < b; ++j)
            for (int k = 0; k < b; ++k) mb.at(j, k) = B(j, xII[static_cast<size_t>(k)]);
        lhs = lhs + kc.gprod(xII, xI) * kc.delta(xI) * det_exact(std::move(ma)) * kc.delta(xII) *
                        det_exact(std::move(mb));
    }

    Matrix<F> stacked(static_cast<size_t>(a + b), static_cast<size_t>(a + b));
    for (int k = 0; k < a + b; ++k) {
        for (int j = 0; j < a; ++j) stacked.at(static_cast<size_t>(j), static_cast<size_t>(k)) = A(j, xs[static_cast<size_t>(k)]);
        for (int j = 0; j < b; ++j)
            stacked.at(static_cast<size_t>(a + j), static_cast<size_t>(k)) = B(j, xs[static_cast<size_t>(k)]);
    }
    F rhs = kc.delta(xs) * det_exact(std::move(stacked));
    return lhs == rhs;
}

// Cauchy determinant identities on equally sized sets:
//   det(1/(u_j - v_k)) = prod_{j>k}(u_j-u_k)(v_k-v_j) / prod_{j,k}(u_j-v_k)
//   g(u,v)   = Delta(u) Delta'(v) det g(u_j,v_k)
//   1/h(u,v) = Delta(u) Delta'(v) det (1/h(u_j,v_k))
template <class F>
bool cauchy_identities(const ParamSet<F>& us, const ParamSet<F>& vs, const KernelCtx<F>& kc) {
    const size_t n = us.size();
    if (vs.size() != n) throw CardinalityMismatchError("cauchy identities need #u = #v");

    Matrix<F> minv(n, n), mg(n, n), mh(n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) {
            F d = us[j] - vs[k];
            if (d.is_zero()) throw PoleError("cauchy matrix with coincident u, v");
            minv.at(j, k) = F::one() / d;
            mg.at(j, k) = kc.g(us[j], vs[k]);
            F hh = kc.h(us[j], vs[k]);
            if (hh.is_zero()) throw PoleError("cauchy h-matrix entry vanishes");
            mh.at(j, k) = F::one() / hh;
        }

    F prod_cross = F::one();
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) prod_cross = prod_cross * (us[j] - vs[k]);
    F prod_diff = F::one();
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < j; ++k) prod_diff = prod_diff * (us[j] - us[k]) * (vs[k] - vs[j]);

    bool ok1 = det_exact(std::move(minv)) == prod_diff / prod_cross;
    bool ok2 = kc.delta(us) * kc.delta_prime(vs) * det_exact(std::move(mg)) == kc.gprod(us, vs);
    bool ok3 = kc.delta(us) * kc.delta_prime(vs) * det_exact(std::move(mh)) ==
               F::one() / kc.hprod(us, vs);
    return ok1 && ok2 && ok3;
}

// Omega-weighted single-row sums of the kernel columns.  With
// Omega = omega_vector(cfg) and x a free variable, the four closed forms
//
//   sum_j t(uC_j,x) Omega_j       = h(uB,x)/h(uC,x) - g(x,uC)/g(x,uB)
//   sum_j g(x,vC_j) Omega_{a+j}   = g(x,vC)/g(x,vB) - 1
//   sum_j t(x,uC_j) Omega_j       = g(x,uC)/g(x,uB) - h(x,uB)/h(x,uC)
//   sum_j Omega_{a+j}/h(vC_j,x)   = 1 - h(vB,x)/h(vC,x)
//
// hold as rational-function identities in x.  They are verified here in the
// field Q(i)(eps) at x = x_k + eps for every x_k in {uB, vC}, which also
// exercises every singular evaluation point through its principal part.
// The raw partial-fraction residue identity behind the second line,
//   -1 = -prod_l (x-vB_l)/(x-vC_l)
//        + sum_j [1/(x-vC_j)] prod_l (vC_j-vB_l) / prod_{l!=j} (vC_j-vC_l),
// is checked alongside in unreduced form.
inline bool single_sum_checks(const BetheConfig<GaussianRational>& cfg) {
    const auto om_q = omega_vector(cfg);
    std::vector<RatFunc> om;
    om.reserve(om_q.size());
    for (const auto& w : om_q) om.push_back(to_eps(w));

    const BetheConfig<RatFunc> ce = to_eps(cfg);
    const KernelCtx<RatFunc> kc(ce.c);
    const size_t a = ce.a(), b = ce.b();
    const auto xs = ce.xbar();

    for (size_t kpt = 0; kpt < xs.size(); ++kpt) {
        const RatFunc x = xs[kpt] + RatFunc::eps();

        RatFunc s1 = RatFunc::zero(), s2 = RatFunc::zero();
        RatFunc s3 = RatFunc::zero(), s4 = RatFunc::zero();
        for (size_t j = 0; j < a; ++j) {
            s1 = s1 + kc.t(ce.uC[j], x) * om[j];
            s3 = s3 + kc.t(x, ce.uC[j]) * om[j];
        }
        for (size_t j = 0; j < b; ++j) {
            s2 = s2 + kc.g(x, ce.vC[j]) * om[a + j];
            s4 = s4 + om[a + j] / kc.h(ce.vC[j], x);
        }

        const RatFunc hu = kc.hprod(ce.uB, x) / kc.hprod(ce.uC, x);
        const RatFunc gu = kc.gprod(x, ce.uC) / kc.gprod(x, ce.uB);
        if (s1 != hu - gu) return false;
        if (s2 != kc.gprod(x, ce.vC) / kc.gprod(x, ce.vB) - RatFunc::one()) return false;
        if (s3 != gu - kc.hprod(x, ce.uB) / kc.hprod(x, ce.uC)) return false;
        if (s4 != RatFunc::one() - kc.hprod(ce.vB, x) / kc.hprod(ce.vC, x)) return false;

        RatFunc lead = RatFunc::one();
        for (size_t l = 0; l < b; ++l) lead = lead * (x - ce.vB[l]) / (x - ce.vC[l]);
        RatFunc res = RatFunc::zero() - lead;
        for (size_t j = 0; j < b; ++j) {
            RatFunc term = RatFunc::one() / (x - ce.vC[j]);
            for (size_t l = 0; l < b; ++l) term = term * (ce.vC[j] - ce.vB[l]);
            for (size_t l = 0; l < b; ++l)
                if (l != j) term = term / (ce.vC[j] - ce.vC[l]);
            res = res + term;
        }
        if (res != RatFunc::zero() - RatFunc::one()) return false;
    }
    return true;
}

} // namespace bethe
