#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bethe/errors.hpp"
#include "bethe/kernels.hpp"

namespace bethe {

// Point -> value table for one of the free functional parameters r1, r3,
// with an optional first derivative at the point.  Lookup is by exact
// equality; the tables are tiny.
template <class F>
struct RTable {
    struct Entry {
        F point;
        F value;
        std::optional<F> deriv;
    };
    std::vector<Entry> entries;

    void set(F point, F value, std::optional<F> deriv = std::nullopt) {
        for (auto& e : entries)
            if (e.point == point) {
                e.value = std::move(value);
                e.deriv = std::move(deriv);
                return;
            }
        entries.push_back({std::move(point), std::move(value), std::move(deriv)});
    }

    const Entry* find(const F& point) const {
        for (const auto& e : entries)
            if (e.point == point) return &e;
        return nullptr;
    }
};

// One weighted-model configuration: the four Bethe parameter sets, the
// kernel constant, the twist data, and the free r-value tables.  a = #uC
// must equal #uB and b = #vC must equal #vB; validate() additionally
// rejects any pair across the union of the four sets whose difference is
// 0, c or -c, since every in-scope formula has a pole or a vanishing
// kernel there.
template <class F>
struct BetheConfig {
    F c;
    ParamSet<F> uC{"uC"}, vC{"vC"}, uB{"uB"}, vB{"vB"};
    F varkappa = F::one();
    std::array<F, 3> kappa{F::one(), F::one(), F::one()};
    RTable<F> r1_free, r3_free;

    size_t a() const { return uC.size(); }
    size_t b() const { return vC.size(); }

    KernelCtx<F> kernels() const { return KernelCtx<F>(c); }

    // Concatenation {uB, vC}: the column points of the determinant
    // representation.
    ParamSet<F> xbar() const { return ParamSet<F>::join(uB, vC); }

    void validate() const {
        if (c.is_zero()) throw PoleError("kernel constant c must be nonzero");
        if (uC.size() != uB.size())
            throw CardinalityMismatchError("uC has " + std::to_string(uC.size()) +
                                           " points but uB has " + std::to_string(uB.size()));
        if (vC.size() != vB.size())
            throw CardinalityMismatchError("vC has " + std::to_string(vC.size()) +
                                           " points but vB has " + std::to_string(vB.size()));
        std::vector<const ParamSet<F>*> sets{&uC, &vC, &uB, &vB};
        std::vector<std::pair<const F*, std::string>> pts;
        for (const auto* s : sets)
            for (size_t k = 0; k < s->size(); ++k)
                pts.push_back({&s->v[k], s->label + "[" + std::to_string(k) + "]"});
        for (size_t j = 0; j < pts.size(); ++j)
            for (size_t k = j + 1; k < pts.size(); ++k) {
                F d = *pts[j].first - *pts[k].first;
                if (d.is_zero() || (d - c).is_zero() || (d + c).is_zero())
                    throw PoleError("parameters " + pts[j].second + " and " + pts[k].second +
                                    " differ by 0 or +-c");
            }
    }
};

// Transfer-matrix eigenvalue combination, normalized by the middle weight:
//   tau(w) = kappa1 r1(w) f(u,w) + kappa2 f(w,u) f(v,w) - kappa3 r3(w) f(v,w)
// with (u, v) the C-side or B-side sets.  r-values come from the free
// tables of the configuration.
enum class Side { C, B };

template <class F>
F tau_kappa(const F& w, const BetheConfig<F>& cfg, Side side) {
    const auto kc = cfg.kernels();
    const ParamSet<F>& us = side == Side::C ? cfg.uC : cfg.uB;
    const ParamSet<F>& vs = side == Side::C ? cfg.vC : cfg.vB;
    const auto* e1 = cfg.r1_free.find(w);
    const auto* e3 = cfg.r3_free.find(w);
    if (!e1) throw MissingRValueError("tau needs r1 at " + point_str(w));
    if (!e3) throw MissingRValueError("tau needs r3 at " + point_str(w));
    return cfg.kappa[0] * e1->value * kc.fprod(us, w) +
           cfg.kappa[1] * kc.fprod(w, us) * kc.fprod(vs, w) -
           cfg.kappa[2] * e3->value * kc.fprod(vs, w);
}

template <class F>
std::string point_str(const F& x) {
    return x.str();
}

// The weight vector used to combine determinant rows:
//   Omega_j     = [1/g(uC_j, uB)] prod_{k != j} g(uC_j, uC_k),  j < a
//   Omega_{a+j} = [1/g(vC_j, vB)] prod_{k != j} g(vC_j, vC_k),  j < b
// Under the configuration invariants every component is nonzero.
template <class F>
std::vector<F> omega_vector(const BetheConfig<F>& cfg) {
    const auto kc = cfg.kernels();
    std::vector<F> om;
    om.reserve(cfg.a() + cfg.b());
    for (size_t j = 0; j < cfg.a(); ++j)
        om.push_back(kc.inv_g(cfg.uC[j], cfg.uB) * kc.gprod(cfg.uC[j], cfg.uC.without(j)));
    for (size_t j = 0; j < cfg.b(); ++j)
        om.push_back(kc.inv_g(cfg.vC[j], cfg.vB) * kc.gprod(cfg.vC[j], cfg.vC.without(j)));
    return om;
}

} // namespace bethe
