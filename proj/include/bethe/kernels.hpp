#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bethe/errors.hpp"

namespace bethe {

// An ordered tuple of spectral parameters.  Subsets always keep the
// original (natural) order; the label is carried for diagnostics only.
template <class F>
struct ParamSet {
    std::vector<F> v;
    std::string label;

    ParamSet() = default;
    explicit ParamSet(std::string lab) : label(std::move(lab)) {}
    ParamSet(std::vector<F> vals, std::string lab) : v(std::move(vals)), label(std::move(lab)) {}

    size_t size() const { return v.size(); }
    bool empty() const { return v.empty(); }
    const F& operator[](size_t k) const { return v[k]; }

    ParamSet shifted(const F& delta) const {
        ParamSet out(label + "+shift");
        out.v.reserve(v.size());
        for (const auto& x : v) out.v.push_back(x + delta);
        return out;
    }

    // The set with element j removed.
    ParamSet without(size_t j) const {
        ParamSet out(label);
        out.v.reserve(v.size() - 1);
        for (size_t k = 0; k < v.size(); ++k)
            if (k != j) out.v.push_back(v[k]);
        return out;
    }

    ParamSet select(const std::vector<int>& idx) const {
        ParamSet out(label);
        out.v.reserve(idx.size());
        for (int k : idx) out.v.push_back(v[static_cast<size_t>(k)]);
        return out;
    }

    static ParamSet join(const ParamSet& a, const ParamSet& b) {
        ParamSet out(a.label + "," + b.label);
        out.v = a.v;
        out.v.insert(out.v.end(), b.v.begin(), b.v.end());
        return out;
    }
};

// The elementary rational kernels and their set-product extensions, all
// tied to one fixed nonzero constant c.
//
//   g(u,v) = c/(u-v)            f(u,v) = (u-v+c)/(u-v)
//   h(u,v) = (u-v+c)/c          t(u,v) = c^2 / ((u-v)(u-v+c))
//
// g, f, t have a pole at u = v; t also at u - v = -c.  Products over sets
// multiply pairwise; empty products are 1.  The inv_* helpers evaluate the
// reciprocal of a set product and return an exact zero when the product
// has a pole, which is the convention the determinant entries rely on.
template <class F>
struct KernelCtx {
    F c;

    explicit KernelCtx(F cc) : c(std::move(cc)) {
        if (c.is_zero()) throw PoleError("kernel constant c must be nonzero");
    }

    F g(const F& u, const F& v) const {
        F d = u - v;
        if (d.is_zero()) throw PoleError("g evaluated at coincident arguments");
        return c / d;
    }
    F f(const F& u, const F& v) const {
        F d = u - v;
        if (d.is_zero()) throw PoleError("f evaluated at coincident arguments");
        return (d + c) / d;
    }
    F h(const F& u, const F& v) const { return (u - v + c) / c; }
    F t(const F& u, const F& v) const {
        F d = u - v;
        if (d.is_zero()) throw PoleError("t evaluated at coincident arguments");
        F dc = d + c;
        if (dc.is_zero()) throw PoleError("t evaluated at arguments differing by -c");
        return (c * c) / (d * dc);
    }

    // Set products, with scalar/set mixes in either slot.
    template <class Ker>
    F prod(Ker ker, const ParamSet<F>& xs, const ParamSet<F>& ys) const {
        F acc = F::one();
        for (const auto& x : xs.v)
            for (const auto& y : ys.v) acc = acc * (this->*ker)(x, y);
        return acc;
    }
    template <class Ker>
    F prod(Ker ker, const F& x, const ParamSet<F>& ys) const {
        F acc = F::one();
        for (const auto& y : ys.v) acc = acc * (this->*ker)(x, y);
        return acc;
    }
    template <class Ker>
    F prod(Ker ker, const ParamSet<F>& xs, const F& y) const {
        F acc = F::one();
        for (const auto& x : xs.v) acc = acc * (this->*ker)(x, y);
        return acc;
    }

    using KerFn = F (KernelCtx::*)(const F&, const F&) const;

    template <class A, class B>
    F gprod(const A& a, const B& b) const {
        return prod(static_cast<KerFn>(&KernelCtx::g), a, b);
    }
    template <class A, class B>
    F fprod(const A& a, const B& b) const {
        return prod(static_cast<KerFn>(&KernelCtx::f), a, b);
    }
    template <class A, class B>
    F hprod(const A& a, const B& b) const {
        return prod(static_cast<KerFn>(&KernelCtx::h), a, b);
    }

    // 1 / prod f(x, y) over x in xs; exact zero when some factor has a pole.
    F inv_f(const ParamSet<F>& xs, const F& y) const {
        for (const auto& x : xs.v)
            if ((x - y).is_zero()) return F::zero();
        return F::one() / fprod(xs, y);
    }
    F inv_f(const F& x, const ParamSet<F>& ys) const {
        for (const auto& y : ys.v)
            if ((x - y).is_zero()) return F::zero();
        return F::one() / fprod(x, ys);
    }
    F inv_g(const ParamSet<F>& xs, const F& y) const {
        for (const auto& x : xs.v)
            if ((x - y).is_zero()) return F::zero();
        return F::one() / gprod(xs, y);
    }
    F inv_g(const F& x, const ParamSet<F>& ys) const {
        for (const auto& y : ys.v)
            if ((x - y).is_zero()) return F::zero();
        return F::one() / gprod(x, ys);
    }

    // delta_prime(X) = prod_{j<k} g(x_j, x_k);  delta(X) = prod_{j>k}.
    F delta_prime(const ParamSet<F>& xs) const {
        F acc = F::one();
        for (size_t j = 0; j < xs.size(); ++j)
            for (size_t k = j + 1; k < xs.size(); ++k) acc = acc * g(xs[j], xs[k]);
        return acc;
    }
    F delta(const ParamSet<F>& xs) const {
        F acc = F::one();
        for (size_t j = 0; j < xs.size(); ++j)
            for (size_t k = 0; k < j; ++k) acc = acc * g(xs[j], xs[k]);
        return acc;
    }
};

} // namespace bethe
