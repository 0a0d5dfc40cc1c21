#pragma once

#include "bethe/dwpf.hpp"
#include "bethe/kernels.hpp"
#include "bethe/partitions.hpp"

namespace bethe {

// Arguments of the highest coefficient Z_{a,b}(t; x | s; y):
// #t = #x = a and #s = #y = b.
template <class F>
struct ZArgs {
    ParamSet<F> t, x, s, y;

    void check() const {
        if (t.size() != x.size() || s.size() != y.size())
            throw CardinalityMismatchError("Z needs #t = #x and #s = #y");
    }
    size_t a() const { return t.size(); }
    size_t b() const { return s.size(); }
};

// Partition-sum representation over omega = {x, s} split into
// (omega_I of size a, omega_II of size b):
//   Z = sum g(om_II, om_I) h(om_II, x) g(om_II, y) K_a(om_I | t)
template <class F>
F Z_omega(const ZArgs<F>& za, const KernelCtx<F>& kc) {
    za.check();
    const int a = static_cast<int>(za.a());
    const int b = static_cast<int>(za.b());
    ParamSet<F> omega = ParamSet<F>::join(za.x, za.s);
    F acc = F::zero();
    for (Splits s(a + b, a); !s.done(); s.advance()) {
        auto [omI, omII] = split_set(omega, s.get());
        acc = acc + kc.gprod(omII, omI) * kc.hprod(omII, za.x) * kc.gprod(omII, za.y) *
                        K(omI, za.t, kc);
    }
    return acc;
}

// Equivalent representation over eta = {t, y + c} split into
// (eta_I of size a, eta_II of size b):
//   Z = f(s,t) f(y,x) sum g(eta_I, eta_II) [h(t, eta_II)/h(s, eta_II)]
//                           K_a(x | eta_I)
template <class F>
F Z_eta(const ZArgs<F>& za, const KernelCtx<F>& kc) {
    za.check();
    const int a = static_cast<int>(za.a());
    const int b = static_cast<int>(za.b());
    ParamSet<F> eta = ParamSet<F>::join(za.t, za.y.shifted(kc.c));
    F acc = F::zero();
    for (Splits s(a + b, a); !s.done(); s.advance()) {
        auto [etI, etII] = split_set(eta, s.get());
        acc = acc + kc.gprod(etI, etII) * kc.hprod(za.t, etII) / kc.hprod(za.s, etII) *
                        K(za.x, etI, kc);
    }
    return kc.fprod(za.s, za.t) * kc.fprod(za.y, za.x) * acc;
}

} // namespace bethe
