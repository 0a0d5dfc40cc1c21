#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bethe/config.hpp"
#include "bethe/dwpf.hpp"
#include "bethe/highest.hpp"
#include "bethe/kernels.hpp"
#include "bethe/matrix.hpp"
#include "bethe/partitions.hpp"

namespace bethe {

// Which constraint family the r-values satisfy.
//   SemiOnShell:    the C-side u parameters and the B-side v parameters
//                   obey their Bethe constraints; r1 on uB and r3 on vC
//                   stay free.
//   TwistedOnShell: additionally the B-side u parameters and the C-side v
//                   parameters are constrained, with the twist entering as
//                   varkappa = kappa2/kappa1 and a kappa2/kappa3 factor.
enum class Variant { SemiOnShell, TwistedOnShell };

inline const char* variant_name(Variant v) {
    return v == Variant::SemiOnShell ? "semi-on-shell" : "twisted-on-shell";
}

enum class Provenance { Constrained, Free };

// Fully resolved r-values at every point any in-scope formula reads:
// r1 on uC and uB, r3 on vB and vC.
template <class F>
struct RAssignment {
    struct Entry {
        F point;
        F value;
        Provenance prov;
    };
    std::vector<Entry> r1, r3;
    Variant built_for = Variant::SemiOnShell;

    static const F& lookup(const std::vector<Entry>& table, const F& point, const char* which) {
        for (const auto& e : table)
            if (e.point == point) return e.value;
        throw MissingRValueError(std::string(which) + " has no entry at " + point_str(point));
    }
    const F& r1_at(const F& point) const { return lookup(r1, point, "r1"); }
    const F& r3_at(const F& point) const { return lookup(r3, point, "r3"); }

    template <class Set>
    F r1_prod(const Set& xs) const {
        F acc = F::one();
        for (const auto& x : xs.v) acc = acc * r1_at(x);
        return acc;
    }
    template <class Set>
    F r3_prod(const Set& xs) const {
        F acc = F::one();
        for (const auto& x : xs.v) acc = acc * r3_at(x);
        return acc;
    }
};

// Right side of the u-type Bethe constraint at point us[j] against (us, vs):
//   kap * prod_{k != j} f(u_j,u_k)/f(u_k,u_j) * prod_l f(v_l,u_j)
template <class F>
F u_constraint_rhs(const KernelCtx<F>& kc, const F& kap, const ParamSet<F>& us, size_t j,
                   const ParamSet<F>& vs) {
    F acc = kap;
    for (size_t k = 0; k < us.size(); ++k) {
        if (k == j) continue;
        acc = acc * kc.f(us[j], us[k]) / kc.f(us[k], us[j]);
    }
    return acc * kc.fprod(vs, us[j]);
}

// Resolves every required r-value.  Constrained points get the Bethe
// right sides; free points are read from the configuration tables.
template <class F>
RAssignment<F> apply_constraints(const BetheConfig<F>& cfg, Variant variant) {
    const auto kc = cfg.kernels();
    RAssignment<F> out;
    out.built_for = variant;

    for (size_t j = 0; j < cfg.a(); ++j)
        out.r1.push_back({cfg.uC[j], u_constraint_rhs(kc, cfg.varkappa, cfg.uC, j, cfg.vC),
                          Provenance::Constrained});
    for (size_t k = 0; k < cfg.b(); ++k)
        out.r3.push_back({cfg.vB[k], kc.fprod(cfg.vB[k], cfg.uB), Provenance::Constrained});

    if (variant == Variant::SemiOnShell) {
        for (size_t j = 0; j < cfg.a(); ++j) {
            const auto* e = cfg.r1_free.find(cfg.uB[j]);
            if (!e) throw MissingRValueError("free r1 value at uB[" + std::to_string(j) + "]");
            out.r1.push_back({cfg.uB[j], e->value, Provenance::Free});
        }
        for (size_t k = 0; k < cfg.b(); ++k) {
            const auto* e = cfg.r3_free.find(cfg.vC[k]);
            if (!e) throw MissingRValueError("free r3 value at vC[" + std::to_string(k) + "]");
            out.r3.push_back({cfg.vC[k], e->value, Provenance::Free});
        }
    } else {
        if (cfg.varkappa != cfg.kappa[1] / cfg.kappa[0])
            throw ConstraintViolationError("twisted constraints need varkappa = kappa2/kappa1");
        for (size_t j = 0; j < cfg.a(); ++j)
            out.r1.push_back({cfg.uB[j], u_constraint_rhs(kc, F::one(), cfg.uB, j, cfg.vB),
                              Provenance::Constrained});
        F k23 = cfg.kappa[1] / cfg.kappa[2];
        for (size_t k = 0; k < cfg.b(); ++k)
            out.r3.push_back(
                {cfg.vC[k], k23 * kc.fprod(cfg.vC[k], cfg.uC), Provenance::Constrained});
    }
    return out;
}

struct SumStats {
    std::uint64_t outer_terms = 0;
    std::uint64_t z_terms = 0;
};

// Brute-force scalar product: the four-fold partition sum
//   S = sum  r1(uC_II) r1(uB_I) r3(vC_II) r3(vB_I)
//            f(uC_I,uC_II) f(uB_II,uB_I) g(vC_I,vC_II) g(vB_II,vB_I)
//            [ f(vC_I,uC_I) f(vB_II,uB_II) / (f(vC,uC) f(vB,uB)) ]
//            Z_{a-k,n}(uC_II, uB_II | vC_I, vB_I)
//            Z_{k,b-n}(uB_I, uC_I | vB_II, vC_II)
// over independent splits with #uB_I = #uC_I = k and #vB_I = #vC_I = n.
template <class F>
F sum_formula(const BetheConfig<F>& cfg, const RAssignment<F>& r, SumStats* stats = nullptr) {
    const auto kc = cfg.kernels();
    const int a = static_cast<int>(cfg.a());
    const int b = static_cast<int>(cfg.b());

    F inv_global = F::one() / (kc.fprod(cfg.vC, cfg.uC) * kc.fprod(cfg.vB, cfg.uB));

    F acc = F::zero();
    for (int k = 0; k <= a; ++k) {
        for (int n = 0; n <= b; ++n) {
            for (MultiSplits ms({{a, k}, {a, k}, {b, n}, {b, n}}); !ms.done(); ms.advance()) {
                auto [uCI, uCII] = split_set(cfg.uC, ms.get()[0]);
                auto [uBI, uBII] = split_set(cfg.uB, ms.get()[1]);
                auto [vCI, vCII] = split_set(cfg.vC, ms.get()[2]);
                auto [vBI, vBII] = split_set(cfg.vB, ms.get()[3]);

                ZArgs<F> z1{uCII, uBII, vCI, vBI};
                ZArgs<F> z2{uBI, uCI, vBII, vCII};
                acc = acc + r.r1_prod(uCII) * r.r1_prod(uBI) * r.r3_prod(vCII) * r.r3_prod(vBI) *
                                kc.fprod(uCI, uCII) * kc.fprod(uBII, uBI) * kc.gprod(vCI, vCII) *
                                kc.gprod(vBII, vBI) * kc.fprod(vCI, uCI) * kc.fprod(vBII, uBII) *
                                Z_omega(z1, kc) * Z_omega(z2, kc);
                if (stats) {
                    stats->outer_terms += 1;
                    stats->z_terms += Splits::count(a - k + n, a - k) + Splits::count(k + b - n, k);
                }
            }
        }
    }
    return acc * inv_global;
}

// The (a+b) x (a+b) matrix of the determinant representation, columns
// indexed by x = {uB, vC}.  Entries follow the pole conventions: the
// reciprocal of a set product with a pole is an exact zero, which removes
// every occurrence of r1 at vC points and r3 at uB points and makes the
// lower-right b x b block diagonal.
template <class F>
Matrix<F> build_N(const BetheConfig<F>& cfg, const RAssignment<F>& r, Variant variant) {
    if (variant == Variant::TwistedOnShell && r.built_for != Variant::TwistedOnShell)
        throw ConstraintViolationError("twisted entries need twisted-on-shell r-values");
    const auto kc = cfg.kernels();
    const size_t a = cfg.a();
    const size_t b = cfg.b();
    const ParamSet<F> xs = cfg.xbar();
    const bool a_odd = a % 2 == 1;

    Matrix<F> m(a + b, a + b);
    for (size_t k = 0; k < a + b; ++k) {
        const F& x = xs[k];
        const bool x_in_uB = k < a;

        if (variant == Variant::SemiOnShell) {
            for (size_t j = 0; j < a; ++j) {
                F term2 = cfg.varkappa * kc.t(x, cfg.uC[j]) * kc.hprod(x, cfg.uC);
                F entry = term2;
                if (x_in_uB) {
                    F term1 = r.r1_at(x) * kc.inv_f(cfg.vC, x) * kc.t(cfg.uC[j], x) *
                              kc.hprod(cfg.uC, x);
                    entry = entry + (a_odd ? term1 : -term1);
                }
                m.at(j, k) = entry;
            }
            for (size_t j = 0; j < b; ++j) {
                if (!x_in_uB) {
                    if (j != k - a) continue; // exact zero off the diagonal
                    F pref = F::one() - r.r3_at(x) / kc.fprod(x, cfg.uB);
                    m.at(a + j, k) = pref * kc.gprod(x, cfg.vB) * kc.hprod(x, cfg.uB) /
                                     kc.gprod(x, cfg.vC.without(j));
                } else {
                    F termA = kc.g(x, cfg.vC[j]) * kc.hprod(x, cfg.uB);
                    F termB = r.r1_at(x) * r.r3_at(cfg.vC[j]) * kc.hprod(cfg.uB, x) /
                              (cfg.varkappa * kc.fprod(cfg.vC[j], cfg.uC) * kc.fprod(cfg.vB, x) *
                               kc.h(cfg.vC[j], x));
                    if (!a_odd) termB = -termB;
                    m.at(a + j, k) =
                        kc.gprod(x, cfg.vB) / kc.gprod(x, cfg.vC) * (termA + termB);
                }
            }
        } else {
            F hx_uB = kc.hprod(x, cfg.uB);
            for (size_t j = 0; j < a; ++j) {
                F term2 = cfg.kappa[1] / cfg.kappa[0] * kc.t(x, cfg.uC[j]) *
                          kc.hprod(x, cfg.uC) / hx_uB;
                F entry = term2;
                F invf = kc.inv_f(cfg.vC, x);
                if (!invf.is_zero()) {
                    entry = entry + kc.t(cfg.uC[j], x) * kc.fprod(cfg.vB, x) *
                                        kc.hprod(cfg.uC, x) * invf / kc.hprod(cfg.uB, x);
                }
                m.at(j, k) = hx_uB * entry;
            }
            for (size_t j = 0; j < b; ++j) {
                F mid = F::one();
                if (!x_in_uB)
                    mid = mid - cfg.kappa[1] / cfg.kappa[2] * kc.fprod(x, cfg.uC) /
                                    kc.fprod(x, cfg.uB);
                if (!x_in_uB) {
                    if (j != k - a) continue;
                    m.at(a + j, k) = hx_uB * kc.gprod(x, cfg.vB) * mid /
                                     kc.gprod(x, cfg.vC.without(j));
                } else {
                    F bracket = kc.g(x, cfg.vC[j]) +
                                cfg.kappa[0] / (cfg.kappa[2] * kc.h(cfg.vC[j], x));
                    m.at(a + j, k) = hx_uB * kc.gprod(x, cfg.vB) / kc.gprod(x, cfg.vC) * mid *
                                     bracket;
                }
            }
        }
    }
    return m;
}

// Determinant representation of the scalar product:
//   S = Delta(x) Delta'(uC) Delta'(vC) det N,   x = {uB, vC}.
template <class F>
F det_rep(const BetheConfig<F>& cfg, const RAssignment<F>& r, Variant variant) {
    const auto kc = cfg.kernels();
    ParamSet<F> xs = cfg.xbar();
    return kc.delta(xs) * kc.delta_prime(cfg.uC) * kc.delta_prime(cfg.vC) *
           det_exact(build_N(cfg, r, variant));
}

// The mirrored configuration: C and B labels exchanged on both families.
// The same constraint structure then pins r1 on the old uB set and r3 on
// the old vC set.
template <class F>
BetheConfig<F> mirrored(const BetheConfig<F>& cfg) {
    BetheConfig<F> out = cfg;
    std::swap(out.uC, out.uB);
    std::swap(out.vC, out.vB);
    out.uC.label = "uC";
    out.uB.label = "uB";
    out.vC.label = "vC";
    out.vB.label = "vB";
    return out;
}

template <class F>
bool swap_CB_check(const BetheConfig<F>& cfg) {
    BetheConfig<F> mir = mirrored(cfg);
    auto r = apply_constraints(mir, Variant::SemiOnShell);
    return det_rep(mir, r, Variant::SemiOnShell) == sum_formula(mir, r);
}

// ---------------------------------------------------------------------------
// Stepwise re-derivation of the determinant representation
// ---------------------------------------------------------------------------
//
// The route from the partition sum to the determinant goes through three
// intermediate summation identities plus one global refactoring.  Each is
// checked on its own below; together they give an independent confirmation
// that the closed determinant really resums the four-fold partition sum.

namespace detail {

template <class F>
F pow_int(F base, long e) {
    if (e < 0) {
        base = F::one() / base;
        e = -e;
    }
    F acc = F::one();
    for (long i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

// Residual free values once the B-side constraint structure is stripped:
//   r1(uB_j) = rhat1_j * prod_{k!=j} f(uB_j,uB_k)/f(uB_k,uB_j) * f(vB,uB_j)
//   r3(vC_j) = rhat3_j * f(vC_j,uC)
template <class F>
std::vector<F> rhat1_values(const BetheConfig<F>& cfg, const RAssignment<F>& r) {
    const auto kc = cfg.kernels();
    std::vector<F> out(cfg.a());
    for (size_t j = 0; j < cfg.a(); ++j)
        out[j] = r.r1_at(cfg.uB[j]) /
                 u_constraint_rhs(kc, F::one(), cfg.uB, j, cfg.vB);
    return out;
}

template <class F>
std::vector<F> rhat3_values(const BetheConfig<F>& cfg, const RAssignment<F>& r) {
    const auto kc = cfg.kernels();
    std::vector<F> out(cfg.b());
    for (size_t j = 0; j < cfg.b(); ++j)
        out[j] = r.r3_at(cfg.vC[j]) / kc.fprod(cfg.vC[j], cfg.uC);
    return out;
}

} // namespace detail

struct DerivationOutcome {
    bool lv_ok = true;      // v-side layer peels into an elementary product
    bool g_ok = true;       // mixed uB/vC layer resums into a Cauchy-type det
    bool lu_ok = true;      // u-side layer resums into one a x a determinant
    bool factor_ok = true;  // the three layers reassemble the partition sum
    bool pass() const { return lv_ok && g_ok && lu_ok && factor_ok; }
};

// r must come from apply_constraints (either variant): the reassembly step
// relies on the constrained values on uC and vB.
template <class F>
DerivationOutcome derivation_checks(const BetheConfig<F>& cfg, const RAssignment<F>& r) {
    const auto kc = cfg.kernels();
    const int a = static_cast<int>(cfg.a());
    const int b = static_cast<int>(cfg.b());
    const std::vector<F> rh1 = detail::rhat1_values(cfg, r);
    const std::vector<F> rh3 = detail::rhat3_values(cfg, r);
    DerivationOutcome out;

    // ---- v-layer: signed subset sums of constrained-style r3 weights.
    //   sum_{S -> {ii, iii}} (-1)^{|ii|} r3(v_ii) / f(v_ii, uB)
    //     = prod_{v in S} (1 - r3(v)/f(v, uB))
    auto lv_closed = [&](const std::vector<int>& idx) {
        F acc = F::one();
        for (int j : idx)
            acc = acc * (F::one() - r.r3_at(cfg.vC[j]) / kc.fprod(cfg.vC[j], cfg.uB));
        return acc;
    };
    for (int s = 0; s <= b; ++s)
        for (Splits sel(b, s); !sel.done(); sel.advance()) {
            const std::vector<int>& idx = sel.get().first;
            F sum = F::zero();
            for (int m = 0; m <= s; ++m)
                for (Splits sub(s, m); !sub.done(); sub.advance()) {
                    F term = F::one();
                    for (int pos : sub.get().first) {
                        int j = idx[static_cast<size_t>(pos)];
                        term = term * r.r3_at(cfg.vC[j]) / kc.fprod(cfg.vC[j], cfg.uB);
                    }
                    if (m % 2 == 1) term = -term;
                    sum = sum + term;
                }
            if (sum != lv_closed(idx)) {
                out.lv_ok = false;
                break;
            }
        }

    // ---- mixed layer: for equal-size subsets uB_I, vC_I the double sum
    //   sum_{uB_I -> {i, iv}, vC_I -> {i, iv}, |i| equal}
    //     varkappa^{-|i|} rhat3(vC_i) rhat1(uB_i)
    //     g(uB_i,uB_iv) g(vC_iv,vC_i) g(uB_iv,vC_iv) / h(vC_i,uB_i)
    // equals the Cauchy-type determinant
    //   Delta(vC_I) Delta'(uB_I) det[ g(u_k,v_j) + H(u_k,v_j) ],
    //   H(u,v) = rhat3(v) rhat1(u) / (varkappa h(v,u)).
    auto Hk = [&](int ju, int jv) {
        return rh3[static_cast<size_t>(jv)] * rh1[static_cast<size_t>(ju)] /
               (cfg.varkappa * kc.h(cfg.vC[jv], cfg.uB[ju]));
    };
    auto g_via_det = [&](const std::vector<int>& iu, const std::vector<int>& iv) {
        const size_t n = iu.size();
        Matrix<F> m(n, n);
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                m.at(j, k) = kc.g(cfg.uB[iu[k]], cfg.vC[iv[j]]) + Hk(iu[k], iv[j]);
        return kc.delta(cfg.vC.select(iv)) * kc.delta_prime(cfg.uB.select(iu)) *
               det_exact(std::move(m));
    };
    auto g_via_sum = [&](const std::vector<int>& iu, const std::vector<int>& iv) {
        const int n = static_cast<int>(iu.size());
        F acc = F::zero();
        for (int ni = 0; ni <= n; ++ni)
            for (MultiSplits ms({{n, ni}, {n, ni}}); !ms.done(); ms.advance()) {
                ParamSet<F> all_u = cfg.uB.select(iu), all_v = cfg.vC.select(iv);
                auto [u_i, u_iv] = split_set(all_u, ms.get()[0]);
                auto [v_i, v_iv] = split_set(all_v, ms.get()[1]);
                F term = detail::pow_int(cfg.varkappa, -ni);
                for (int pos : ms.get()[0].first) term = term * rh1[iu[pos]];
                for (int pos : ms.get()[1].first) term = term * rh3[iv[pos]];
                term = term * kc.gprod(u_i, u_iv) * kc.gprod(v_iv, v_i) *
                       kc.gprod(u_iv, v_iv) / kc.hprod(v_i, u_i);
                acc = acc + term;
            }
        return acc;
    };
    for (int s = 0; s <= std::min(a, b) && out.g_ok; ++s)
        for (Splits su(a, s); !su.done() && out.g_ok; su.advance())
            for (Splits sv(b, s); !sv.done(); sv.advance())
                if (g_via_sum(su.get().first, sv.get().first) !=
                    g_via_det(su.get().first, sv.get().first)) {
                    out.g_ok = false;
                    break;
                }

    // ---- u-layer: with w = {uB_II, vC_I} of size a,
    //   sum_{uB_II -> {ii, iii}} K_a({uB_ii - c, vC_I, uB_iii} | uC)
    //     varkappa^{a-|ii|} (-1)^{|ii|} [r1(uB_ii)/f(vC,uB_ii)]
    //     f(uC,uB_ii) f(uB_iii,uB_ii) f(vC_I,uB_ii)
    //   = Delta'(uC) Delta(w) det_a M(uC_j, w_k)
    // with M the first-block entry of the semi-on-shell matrix.
    auto lu_via_det = [&](const ParamSet<F>& w, size_t n_from_uB) {
        const bool a_odd = a % 2 == 1;
        Matrix<F> m(static_cast<size_t>(a), static_cast<size_t>(a));
        for (size_t k = 0; k < w.size(); ++k) {
            const F& x = w[k];
            for (size_t j = 0; j < static_cast<size_t>(a); ++j) {
                F entry = cfg.varkappa * kc.t(x, cfg.uC[j]) * kc.hprod(x, cfg.uC);
                if (k < n_from_uB) {
                    F term1 = r.r1_at(x) * kc.inv_f(cfg.vC, x) * kc.t(cfg.uC[j], x) *
                              kc.hprod(cfg.uC, x);
                    entry = entry + (a_odd ? term1 : -term1);
                }
                m.at(j, k) = entry;
            }
        }
        return kc.delta_prime(cfg.uC) * kc.delta(w) * det_exact(std::move(m));
    };
    auto lu_via_sum = [&](const ParamSet<F>& uBII, const ParamSet<F>& vCI) {
        const int nb = static_cast<int>(uBII.size());
        F acc = F::zero();
        for (int m = 0; m <= nb; ++m)
            for (Splits sp(nb, m); !sp.done(); sp.advance()) {
                auto [u_ii, u_iii] = split_set(uBII, sp.get());
                ParamSet<F> first = ParamSet<F>::join(
                    ParamSet<F>::join(u_ii.shifted(-kc.c), vCI), u_iii);
                F term = K(first, cfg.uC, kc) * detail::pow_int(cfg.varkappa, a - m);
                if (m % 2 == 1) term = -term;
                term = term * r.r1_prod(u_ii) / kc.fprod(cfg.vC, u_ii);
                term = term * kc.fprod(cfg.uC, u_ii) * kc.fprod(u_iii, u_ii) *
                       kc.fprod(vCI, u_ii);
                acc = acc + term;
            }
        return acc;
    };
    if (out.lu_ok)
        for (int t = 0; t <= std::min(a, b) && out.lu_ok; ++t)
            for (Splits su(a, a - t); !su.done() && out.lu_ok; su.advance())
                for (Splits sv(b, t); !sv.done(); sv.advance()) {
                    ParamSet<F> uBII = cfg.uB.select(su.get().first);
                    ParamSet<F> vCI = cfg.vC.select(sv.get().first);
                    ParamSet<F> w = ParamSet<F>::join(uBII, vCI);
                    if (lu_via_sum(uBII, vCI) != lu_via_det(w, uBII.size())) {
                        out.lu_ok = false;
                        break;
                    }
                }

    // ---- reassembly: the three layers recombine into the partition sum,
    //   S = (-1)^b sum_{n_I} f(uB_I,uB_II) h(uB_I,uB_I) g(vC_II,vC_I)
    //         g(vB,uB_I) g(vB,vC_II) g(vC_II,uB_II) h(vC_II,uB)
    //         * [mixed layer](uB_I|vC_I) * [u-layer]({uB_II,vC_I}|uC)
    //         * [v-layer](vC_II|uB).
    if (out.factor_ok) {
        F acc = F::zero();
        for (int nI = 0; nI <= std::min(a, b); ++nI)
            for (Splits su(a, nI); !su.done(); su.advance())
                for (Splits sv(b, nI); !sv.done(); sv.advance()) {
                    auto [uBI, uBII] = split_set(cfg.uB, su.get());
                    auto [vCI, vCII] = split_set(cfg.vC, sv.get());
                    F term = kc.fprod(uBI, uBII) * kc.hprod(uBI, uBI) *
                             kc.gprod(vCII, vCI) * kc.gprod(cfg.vB, uBI) *
                             kc.gprod(cfg.vB, vCII) * kc.gprod(vCII, uBII) *
                             kc.hprod(vCII, cfg.uB);
                    term = term * g_via_det(su.get().first, sv.get().first);
                    term = term * lu_via_det(ParamSet<F>::join(uBII, vCI), uBII.size());
                    term = term * lv_closed(sv.get().second);
                    acc = acc + term;
                }
        if (b % 2 == 1) acc = -acc;
        out.factor_ok = acc == sum_formula(cfg, r);
    }
    return out;
}

} // namespace bethe
