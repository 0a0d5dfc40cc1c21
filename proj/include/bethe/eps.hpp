#pragma once

// Promotion of exact-rational data into the rational-function field F = Q(i)(eps),
// used by limit-style checks that track an explicit deformation parameter.

#include "bethe/config.hpp"
#include "bethe/poly.hpp"
#include "bethe/rational.hpp"

#include <vector>

namespace bethe {

inline RatFunc to_eps(const GaussianRational& x) { return RatFunc::from_rational(x); }

inline ParamSet<RatFunc> to_eps(const ParamSet<GaussianRational>& xs) {
    ParamSet<RatFunc> out;
    out.label = xs.label;
    out.v.reserve(xs.size());
    for (const auto& x : xs.v) out.v.push_back(to_eps(x));
    return out;
}

// Promote a parameter set along a direction vector: x_j -> x_j + eps * dir_j.
inline ParamSet<RatFunc> to_eps_shifted(const ParamSet<GaussianRational>& xs,
                                        const std::vector<GaussianRational>& dir) {
    if (dir.size() != xs.size())
        throw CardinalityMismatchError("shift direction has " + std::to_string(dir.size()) +
                                       " components for " + std::to_string(xs.size()) + " points");
    ParamSet<RatFunc> out;
    out.label = xs.label;
    out.v.reserve(xs.size());
    for (size_t j = 0; j < xs.size(); ++j)
        out.v.push_back(to_eps(xs.v[j]) + RatFunc::eps() * to_eps(dir[j]));
    return out;
}

// Constant-coefficient promotion of a whole configuration (free r-tables included).
inline BetheConfig<RatFunc> to_eps(const BetheConfig<GaussianRational>& cfg) {
    BetheConfig<RatFunc> out;
    out.c = to_eps(cfg.c);
    out.uC = to_eps(cfg.uC);
    out.uB = to_eps(cfg.uB);
    out.vC = to_eps(cfg.vC);
    out.vB = to_eps(cfg.vB);
    out.varkappa = to_eps(cfg.varkappa);
    for (int i = 0; i < 3; ++i) out.kappa[i] = to_eps(cfg.kappa[i]);
    for (const auto& e : cfg.r1_free.entries)
        out.r1_free.set(to_eps(e.point), to_eps(e.value));
    for (const auto& e : cfg.r3_free.entries)
        out.r3_free.set(to_eps(e.point), to_eps(e.value));
    return out;
}

} // namespace bethe
