#pragma once

// Spectral-side results built on the determinant representation: weighted
// row sums and orthogonality of distinct twisted/untwisted eigenvectors,
// the Gaudin norm matrix with its analytic-Jacobian cross-check, the
// epsilon-limit recovery of the norm from the off-shell scalar product,
// and the diagonal form factors of the three diagonal monodromy entries.

#include "bethe/config.hpp"
#include "bethe/eps.hpp"
#include "bethe/matrix.hpp"
#include "bethe/scalar_product.hpp"

#include <string>
#include <vector>

namespace bethe {

// ---------------------------------------------------------------------------
// Row sums and orthogonality
// ---------------------------------------------------------------------------

// Closed forms for the Omega-weighted partial row sums of the twisted
// matrix, divided by h(x, uB), at a point x of the combined set {uB, vC}.
// The reciprocal set products follow the exact-zero convention.
template <class F>
F rowsum_rhs_u(const BetheConfig<F>& cfg, const F& x) {
    const auto kc = cfg.kernels();
    const F k21 = cfg.kappa[1] / cfg.kappa[0];
    return kc.fprod(cfg.vB, x) * kc.inv_f(cfg.vC, x) *
               (F::one() - kc.fprod(cfg.uC, x) * kc.inv_f(cfg.uB, x)) +
           k21 * (kc.fprod(x, cfg.uC) * kc.inv_f(x, cfg.uB) - F::one());
}

template <class F>
F rowsum_rhs_v(const BetheConfig<F>& cfg, const F& x) {
    const auto kc = cfg.kernels();
    const F k23 = cfg.kappa[1] / cfg.kappa[2];
    const F k13 = cfg.kappa[0] / cfg.kappa[2];
    const F left = F::one() - k23 * kc.fprod(x, cfg.uC) * kc.inv_f(x, cfg.uB);
    const F right = (k13 - F::one()) * kc.gprod(cfg.vB, x) * kc.inv_g(cfg.vC, x) +
                    F::one() - k13 * kc.fprod(cfg.vB, x) * kc.inv_f(cfg.vC, x);
    return left * right;
}

template <class F>
F rowsum_rhs_total(const BetheConfig<F>& cfg, const F& x) {
    const auto kc = cfg.kernels();
    const F k21 = cfg.kappa[1] / cfg.kappa[0];
    const F k13 = cfg.kappa[0] / cfg.kappa[2];
    const F k23 = cfg.kappa[1] / cfg.kappa[2];
    return F::one() - k21 +
           (k13 - F::one()) * (kc.gprod(cfg.vB, x) * kc.inv_g(cfg.vC, x) -
                               kc.fprod(cfg.vB, x) * kc.inv_f(cfg.vC, x)) +
           kc.fprod(x, cfg.uC) * kc.inv_f(x, cfg.uB) * (k21 - k23);
}

struct OrthogonalityOutcome {
    bool row_sums_ok = true;
    bool det_zero_at_unit_twist = true;
    std::string note;
    bool pass() const { return row_sums_ok && det_zero_at_unit_twist; }
};

// For a doubly on-shell configuration with generic twist parameters, the
// Omega-weighted sums of the first a rows and of the last b rows of the
// twisted matrix (per column, after removing one factor h(x_k, uB)) match
// rational closed forms; at unit twist the total sum vanishes column by
// column, so the matrix is singular and the scalar product of two distinct
// on-shell vectors is zero.
template <class F>
OrthogonalityOutcome orthogonality_check(const BetheConfig<F>& cfg) {
    if (cfg.a() + cfg.b() == 0)
        throw BadCardinalityError("orthogonality needs at least one Bethe parameter");
    OrthogonalityOutcome out;
    const auto kc = cfg.kernels();
    const size_t a = cfg.a(), b = cfg.b();

    const auto r = apply_constraints(cfg, Variant::TwistedOnShell);
    const auto N = build_N(cfg, r, Variant::TwistedOnShell);
    const auto om = omega_vector(cfg);
    const auto xs = cfg.xbar();

    for (size_t k = 0; k < a + b; ++k) {
        const F& x = xs[k];
        const F scale = F::one() / kc.hprod(x, cfg.uB);
        F sum_u = F::zero(), sum_v = F::zero();
        for (size_t j = 0; j < a; ++j) sum_u = sum_u + N.at(j, k) * om[j];
        for (size_t j = 0; j < b; ++j) sum_v = sum_v + N.at(a + j, k) * om[a + j];
        sum_u = sum_u * scale;
        sum_v = sum_v * scale;
        if (sum_u != rowsum_rhs_u(cfg, x) || sum_v != rowsum_rhs_v(cfg, x) ||
            sum_u + sum_v != rowsum_rhs_total(cfg, x)) {
            out.row_sums_ok = false;
            out.note = "row-sum mismatch at column " + std::to_string(k + 1);
            return out;
        }
    }

    BetheConfig<F> unit = cfg;
    unit.kappa = {F::one(), F::one(), F::one()};
    unit.varkappa = F::one();
    const auto r1 = apply_constraints(unit, Variant::TwistedOnShell);
    const auto N1 = build_N(unit, r1, Variant::TwistedOnShell);
    if (!det_exact(N1).is_zero()) {
        out.det_zero_at_unit_twist = false;
        out.note = "determinant nonzero at unit twist";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaudin matrix and norms
// ---------------------------------------------------------------------------

namespace detail {

// Shared admissibility screen for a bare on-shell family (u, v): the 2c^2
// couplings and the kernels below need all differences within and across
// the two sets to avoid 0 and +-c.
template <class F>
void validate_on_shell_points(const std::vector<F>& us, const std::vector<F>& vs, const F& c) {
    if (c.is_zero()) throw PoleError("kernel constant c must be nonzero");
    std::vector<F> pts = us;
    pts.insert(pts.end(), vs.begin(), vs.end());
    for (size_t j = 0; j < pts.size(); ++j)
        for (size_t k = j + 1; k < pts.size(); ++k) {
            const F d = pts[j] - pts[k];
            if (d.is_zero()) throw DuplicatePointsError("coincident on-shell parameters");
            if ((d - c).is_zero() || (d + c).is_zero())
                throw PoleError("on-shell parameters differ by the kernel constant");
        }
}

} // namespace detail

// The (a+b) x (a+b) Gaudin-type matrix of an on-shell pair (u, v), given the
// logarithmic derivatives ld1_k = r1'(u_k)/r1(u_k) and ld3_k = r3'(v_k)/r3(v_k):
//
//   row j, col k (both < a):
//     delta_jk [ c ld1_k + sum_l 2c^2/((u_k-u_l)^2 - c^2) - sum_m t(v_m,u_k) ]
//     - 2c^2/((u_k-u_j)^2 - c^2)
//   row a+j, col a+k:  delta_jk [ c ld3_k + sum_l t(v_k,u_l) ]
//   row j, col a+k:    t(v_k,u_j)
//   row a+j, col k:   -t(v_j,u_k)
template <class F>
Matrix<F> gaudin_matrix(const std::vector<F>& us, const std::vector<F>& vs,
                        const std::vector<F>& ld1, const std::vector<F>& ld3, const F& c) {
    const size_t a = us.size(), b = vs.size();
    if (ld1.size() != a || ld3.size() != b)
        throw CardinalityMismatchError("log-derivative tables must match the parameter sets");
    detail::validate_on_shell_points(us, vs, c);
    const KernelCtx<F> kc(c);
    const F two = F::from_int(2);

    auto coupling = [&](const F& x, const F& y) {
        const F d = x - y;
        return two * c * c / (d * d - c * c);
    };

    Matrix<F> m(a + b, a + b);
    for (size_t j = 0; j < a; ++j)
        for (size_t k = 0; k < a; ++k) {
            F e = F::zero() - coupling(us[k], us[j]);
            if (j == k) {
                F diag = c * ld1[k];
                for (size_t l = 0; l < a; ++l) diag = diag + coupling(us[k], us[l]);
                for (size_t mm = 0; mm < b; ++mm) diag = diag - kc.t(vs[mm], us[k]);
                e = e + diag;
            }
            m.at(j, k) = e;
        }
    for (size_t j = 0; j < b; ++j) {
        F diag = c * ld3[j];
        for (size_t l = 0; l < a; ++l) diag = diag + kc.t(vs[j], us[l]);
        m.at(a + j, a + j) = diag;
    }
    for (size_t j = 0; j < a; ++j)
        for (size_t k = 0; k < b; ++k) m.at(j, a + k) = kc.t(vs[k], us[j]);
    for (size_t j = 0; j < b; ++j)
        for (size_t k = 0; k < a; ++k) m.at(a + j, k) = F::zero() - kc.t(vs[j], us[k]);
    return m;
}

// Squared norm of an on-shell vector:
//   (-1)^{a+b} prod_{j,k} f(v_j,u_k) prod_{j!=k} f(u_j,u_k)
//            * prod_{j!=k} g(v_j,v_k) * det(Gaudin matrix).
template <class F>
F norm_via_gaudin(const std::vector<F>& us, const std::vector<F>& vs,
                  const std::vector<F>& ld1, const std::vector<F>& ld3, const F& c) {
    const size_t a = us.size(), b = vs.size();
    const KernelCtx<F> kc(c);
    F pref = ((a + b) % 2 == 0) ? F::one() : F::zero() - F::one();
    for (size_t j = 0; j < b; ++j)
        for (size_t k = 0; k < a; ++k) pref = pref * kc.f(vs[j], us[k]);
    for (size_t j = 0; j < a; ++j)
        for (size_t k = 0; k < a; ++k)
            if (j != k) pref = pref * kc.f(us[j], us[k]);
    for (size_t j = 0; j < b; ++j)
        for (size_t k = 0; k < b; ++k)
            if (j != k) pref = pref * kc.g(vs[j], vs[k]);
    return pref * det_exact(gaudin_matrix(us, vs, ld1, ld3, c));
}

// The Gaudin matrix is c times the Jacobian of the logarithmic Bethe system
//   Phi_j     = log[ r1(u_j) / f(v,u_j) * prod_{k!=j} f(u_k,u_j)/f(u_j,u_k) ]
//   Phi_{a+j} = log[ r3(v_j) / f(v_j,u) ]
// in the variables (u, v).  This check recomputes every partial derivative
// from the factored logarithms as sums of reciprocals of linear terms and
// compares entrywise against the closed-form matrix above.
template <class F>
bool jacobian_check(const std::vector<F>& us, const std::vector<F>& vs,
                    const std::vector<F>& ld1, const std::vector<F>& ld3, const F& c) {
    const size_t a = us.size(), b = vs.size();
    if (ld1.size() != a || ld3.size() != b)
        throw CardinalityMismatchError("log-derivative tables must match the parameter sets");
    detail::validate_on_shell_points(us, vs, c);

    // d/dy log f(x,y) = 1/(x-y) - 1/(x-y+c);  d/dx log f(x,y) is its negative.
    auto A = [&](const F& x, const F& y) {
        return F::one() / (x - y) - F::one() / (x - y + c);
    };

    Matrix<F> jac(a + b, a + b);
    for (size_t j = 0; j < a; ++j) {
        for (size_t k = 0; k < a; ++k) {
            if (j == k) {
                F e = ld1[j];
                for (size_t l = 0; l < b; ++l) e = e - A(vs[l], us[j]);
                for (size_t mm = 0; mm < a; ++mm)
                    if (mm != j) e = e + A(us[mm], us[j]) + A(us[j], us[mm]);
                jac.at(j, j) = c * e;
            } else {
                jac.at(j, k) = c * (F::zero() - A(us[k], us[j]) - A(us[j], us[k]));
            }
        }
        for (size_t k = 0; k < b; ++k) jac.at(j, a + k) = c * A(vs[k], us[j]);
    }
    for (size_t j = 0; j < b; ++j) {
        for (size_t k = 0; k < a; ++k) jac.at(a + j, k) = c * (F::zero() - A(vs[j], us[k]));
        F e = ld3[j];
        for (size_t l = 0; l < a; ++l) e = e + A(vs[j], us[l]);
        jac.at(a + j, a + j) = c * e;
    }
    return jac == gaudin_matrix(us, vs, ld1, ld3, c);
}

// ---------------------------------------------------------------------------
// Norm as an epsilon-limit of the determinant representation
// ---------------------------------------------------------------------------

struct NormLimitOutcome {
    bool pass = false;
    GaussianRational limit_value;   // eps -> 0 value of the scalar product
    GaussianRational gaudin_value;  // closed-form squared norm
};

// Coalescence limit of the determinant representation around an on-shell
// pair (u, v) with chosen r-derivatives d (for r1 at u) and e (for r3 at v).
//
// All four parameter sets move: uC = u + eps*alpha, uB = u + eps*beta,
// vC = v + eps*gamma, vB = v + eps*delta.  The directions cannot all be
// free: to first order in eps the dual-state parameters must keep solving
// the first-level system and the state parameters the second-level system
// with a single pair of functions r1, r3.  Writing J for the Jacobian of
// the logarithmic Bethe system (the Gaudin matrix over c), this means the
// upper a rows of J annihilate (alpha, gamma) and the lower b rows
// annihilate (beta, delta).  The caller chooses beta and gamma freely; the
// dependent components alpha and delta are solved for here.  Along any such
// family the limit exists, is independent of (beta, gamma), and equals the
// Gaudin-form squared norm with log-derivatives d_k/r1(u_k), e_k/r3(v_k).
// A naive family that moves only uB and vC fails: the limit then retains
// direction terms coupling the two sectors.
//
// Free values on the moving points come from Hermite interpolants carrying
// the on-shell values and the chosen derivatives; constrained values are
// recomputed from the shifted sets, so the determinant representation holds
// exactly at every eps, and only first-order data survives in the limit.
inline NormLimitOutcome norm_limit_check(const std::vector<GaussianRational>& us,
                                         const std::vector<GaussianRational>& vs,
                                         const std::vector<GaussianRational>& beta,
                                         const std::vector<GaussianRational>& gamma,
                                         const std::vector<GaussianRational>& d,
                                         const std::vector<GaussianRational>& e,
                                         const GaussianRational& c) {
    using Q = GaussianRational;
    const size_t a = us.size(), b = vs.size();
    if (beta.size() != a || gamma.size() != b || d.size() != a || e.size() != b)
        throw CardinalityMismatchError("directions and derivative tables must match (u, v)");
    if (a + b == 0) throw BadCardinalityError("norm limit needs at least one Bethe parameter");
    detail::validate_on_shell_points(us, vs, c);

    const KernelCtx<Q> kc(c);
    ParamSet<Q> useq(us, "u"), vseq(vs, "v");

    // On-shell values of the free functions at the base points.
    std::vector<Q> vals1(a), vals3(b);
    for (size_t j = 0; j < a; ++j)
        vals1[j] = u_constraint_rhs(kc, Q::one(), useq, j, vseq);
    for (size_t j = 0; j < b; ++j) vals3[j] = kc.fprod(vs[j], useq);

    std::vector<Q> ld1(a), ld3(b);
    for (size_t j = 0; j < a; ++j) ld1[j] = d[j] / vals1[j];
    for (size_t j = 0; j < b; ++j) ld3[j] = e[j] / vals3[j];

    const Matrix<Q> G = gaudin_matrix(us, vs, ld1, ld3, c);

    // Dependent directions.  alpha solves the upper-row conditions given
    // gamma; delta solves the (diagonal) lower-row conditions given beta.
    std::vector<Q> alpha(a, Q::zero()), delta(b, Q::zero());
    if (a > 0) {
        Matrix<Q> block(a, a);
        std::vector<Q> rhs(a, Q::zero());
        for (size_t j = 0; j < a; ++j) {
            for (size_t k = 0; k < a; ++k) block.at(j, k) = G.at(j, k);
            for (size_t m = 0; m < b; ++m) rhs[j] = rhs[j] - G.at(j, a + m) * gamma[m];
        }
        auto sol = solve_linear(std::move(block), std::move(rhs));
        if (!sol) throw ConstraintViolationError("tangent system for the dual state is singular");
        alpha = *sol;
    }
    for (size_t m = 0; m < b; ++m) {
        if (G.at(a + m, a + m).is_zero())
            throw ConstraintViolationError("tangent system for the state is singular");
        Q acc = Q::zero();
        for (size_t j = 0; j < a; ++j) acc = acc + G.at(a + m, j) * beta[j];
        delta[m] = (Q::zero() - acc) / G.at(a + m, a + m);
    }
    for (size_t j = 0; j < a; ++j)
        if ((beta[j] - alpha[j]).is_zero())
            throw ConstraintViolationError("coalescing pair u_" + std::to_string(j + 1) +
                                           " has no first-order separation");
    for (size_t m = 0; m < b; ++m)
        if ((gamma[m] - delta[m]).is_zero())
            throw ConstraintViolationError("coalescing pair v_" + std::to_string(m + 1) +
                                           " has no first-order separation");

    const Poly R1 = hermite_interpolant(us, vals1, d);
    const Poly R3 = hermite_interpolant(vs, vals3, e);

    BetheConfig<RatFunc> cfg;
    cfg.c = to_eps(c);
    cfg.uC = to_eps_shifted(ParamSet<Q>(us, "uC"), alpha);
    cfg.uB = to_eps_shifted(ParamSet<Q>(us, "uB"), beta);
    cfg.vC = to_eps_shifted(ParamSet<Q>(vs, "vC"), gamma);
    cfg.vB = to_eps_shifted(ParamSet<Q>(vs, "vB"), delta);
    for (size_t j = 0; j < a; ++j) cfg.r1_free.set(cfg.uB[j], R1.eval<RatFunc>(cfg.uB[j]));
    for (size_t j = 0; j < b; ++j) cfg.r3_free.set(cfg.vC[j], R3.eval<RatFunc>(cfg.vC[j]));
    cfg.validate();

    const auto r = apply_constraints(cfg, Variant::SemiOnShell);

    // Every entry of the matrix is regular at eps = 0 along an admissible
    // family (the reduced numerator absorbs the coalescence pole), and
    // evaluation at a regular point is a ring homomorphism, so the limit of
    // the determinant is the determinant of the entrywise limits.  This
    // avoids eliminating over the rational-function field.
    const Matrix<RatFunc> Ne = build_N(cfg, r, Variant::SemiOnShell);
    const size_t n = a + b;
    Matrix<Q> N0(n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) N0.at(j, k) = Ne.at(j, k).value_at_zero();

    // Prefactor at eps = 0: the combined set degenerates to the base points.
    std::vector<Q> xs0 = us;
    xs0.insert(xs0.end(), vs.begin(), vs.end());
    const Q pref = kc.delta(ParamSet<Q>(xs0, "x")) * kc.delta_prime(useq) * kc.delta_prime(vseq);

    NormLimitOutcome out;
    out.limit_value = pref * det_exact(std::move(N0));
    out.gaudin_value = norm_via_gaudin(us, vs, ld1, ld3, c);
    out.pass = out.limit_value == out.gaudin_value;
    return out;
}

// ---------------------------------------------------------------------------
// Diagonal form factors at unit twist
// ---------------------------------------------------------------------------

// Smallest row index whose Omega component is nonzero (the row that may be
// replaced without losing information).  Under the configuration invariants
// this is always row 0, but the guard is kept explicit.
template <class F>
size_t default_pivot(const BetheConfig<F>& cfg) {
    const auto om = omega_vector(cfg);
    for (size_t p = 0; p < om.size(); ++p)
        if (!om[p].is_zero()) return p;
    throw ZeroPivotError("all Omega components vanish");
}

namespace detail {

template <class F>
void require_unit_twist(const BetheConfig<F>& cfg) {
    if (!(cfg.kappa[0] == F::one() && cfg.kappa[1] == F::one() && cfg.kappa[2] == F::one() &&
          cfg.varkappa == F::one()))
        throw ConstraintViolationError("diagonal form factors are defined at unit twist");
}

} // namespace detail

// The matrix whose determinant gives the diagonal form factor of the i-th
// diagonal monodromy entry (i in {1,2,3}) between two doubly on-shell
// vectors at unit twist: the twisted matrix with each column divided by
// h(x_k, uB) and row p replaced by the twist-derivative row
//   i=1:  1 + g(vB,x)/g(vC,x) - f(vB,x)/f(vC,x) - f(x,uC)/f(x,uB)
//   i=2:  -1
//   i=3:  sum of the two rows above,
// reciprocal set products taken with the exact-zero convention.
template <class F>
Matrix<F> formfactor_matrix(const BetheConfig<F>& cfg, int i, size_t p) {
    detail::require_unit_twist(cfg);
    if (i < 1 || i > 3) throw ConstraintViolationError("form factor index must be 1, 2 or 3");
    const size_t n = cfg.a() + cfg.b();
    if (n == 0) throw BadCardinalityError("form factors need at least one Bethe parameter");
    if (p >= n) throw ZeroPivotError("pivot row out of range");
    if (omega_vector(cfg)[p].is_zero()) throw ZeroPivotError("pivot row has zero Omega weight");

    const auto kc = cfg.kernels();
    const auto r = apply_constraints(cfg, Variant::TwistedOnShell);
    Matrix<F> m = build_N(cfg, r, Variant::TwistedOnShell);
    const auto xs = cfg.xbar();

    for (size_t k = 0; k < n; ++k) {
        const F& x = xs[k];
        const F scale = F::one() / kc.hprod(x, cfg.uB);
        for (size_t j = 0; j < n; ++j) m.at(j, k) = m.at(j, k) * scale;

        F base = F::one() + kc.gprod(cfg.vB, x) * kc.inv_g(cfg.vC, x) -
                 kc.fprod(cfg.vB, x) * kc.inv_f(cfg.vC, x) -
                 kc.fprod(x, cfg.uC) * kc.inv_f(x, cfg.uB);
        switch (i) {
            case 1: m.at(p, k) = base; break;
            case 2: m.at(p, k) = F::zero() - F::one(); break;
            case 3: m.at(p, k) = base - F::one(); break;
        }
    }
    return m;
}

// Closed form of the diagonal form factor:
//   Omega_p^{-1} f(vC,uB) h(uB,uB) delta'(uC) delta(uB) delta(vC) delta'(vC)
//   * det(formfactor_matrix).
template <class F>
F formfactor_value(const BetheConfig<F>& cfg, int i, size_t p) {
    const auto kc = cfg.kernels();
    const auto om = omega_vector(cfg);
    const F pref = (F::one() / om[p]) * kc.fprod(cfg.vC, cfg.uB) * kc.hprod(cfg.uB, cfg.uB) *
                   kc.delta_prime(cfg.uC) * kc.delta(cfg.uB) * kc.delta(cfg.vC) *
                   kc.delta_prime(cfg.vC);
    return pref * det_exact(formfactor_matrix(cfg, i, p));
}

struct FormFactorOutcome {
    bool pass = false;
    bool vanishes_at_unit_twist = false;  // scalar product itself is 0 at kappa = 1
    GaussianRational derivative_value;    // graded twist derivative of the scalar product
    GaussianRational determinant_value;   // closed-form determinant evaluation
};

// Independent route to the same form factor: perturb the i-th twist
// parameter as kappa_i = 1 + eps inside the rational-function field, build
// the doubly on-shell twisted scalar product there, and take the graded
// first derivative at eps = 0 (the third entry carries grading sign -1).
inline FormFactorOutcome formfactor_derivative_check(const BetheConfig<GaussianRational>& cfg,
                                                     int i) {
    detail::require_unit_twist(cfg);
    if (i < 1 || i > 3) throw ConstraintViolationError("form factor index must be 1, 2 or 3");

    BetheConfig<RatFunc> cfge = to_eps(cfg);
    cfge.kappa[i - 1] = RatFunc::one() + RatFunc::eps();
    cfge.varkappa = cfge.kappa[1] / cfge.kappa[0];
    cfge.validate();

    const auto re = apply_constraints(cfge, Variant::TwistedOnShell);
    const RatFunc S = det_rep(cfge, re, Variant::TwistedOnShell);

    FormFactorOutcome out;
    out.vanishes_at_unit_twist = S.value_at_zero().is_zero();
    const GaussianRational der = S.derivative_at_zero();
    out.derivative_value = (i == 3) ? GaussianRational::zero() - der : der;
    out.determinant_value = formfactor_value(cfg, i, default_pivot(cfg));
    out.pass = out.vanishes_at_unit_twist && out.derivative_value == out.determinant_value;
    return out;
}

} // namespace bethe
