#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bethe/errors.hpp"
#include "bethe/kernels.hpp"
#include "bethe/matrix.hpp"

namespace bethe {

// An ordered two-subset partition of {0, .., n-1}: both subsets strictly
// increasing, sign = (-1)^inv where inv counts the pairs put out of order
// by concatenating (first, second).
struct Split {
    std::vector<int> first, second;
    int sign = 1;
};

// Streams the C(n, k) partitions with |first| = k in lexicographic order
// of the first subset.  The parity is maintained incrementally across
// advance() instead of being recounted per split.  Streams are value
// types: copies advance independently.
class Splits {
public:
    Splits(int n, int k);

    bool done() const { return done_; }
    const Split& get() const { return cur_; }
    void advance();

    static std::uint64_t count(int n, int k);

private:
    void fill_second();
    int n_, k_;
    bool done_;
    long inv_; // current inversion count
    Split cur_;
};

// Odometer over independent Splits streams; yields every combination of
// one split per dimension.
class MultiSplits {
public:
    explicit MultiSplits(const std::vector<std::pair<int, int>>& dims);

    bool done() const { return done_; }
    const std::vector<Split>& get() const { return cur_; }
    void advance();

    static std::uint64_t count(const std::vector<std::pair<int, int>>& dims);

private:
    std::vector<std::pair<int, int>> dims_;
    std::vector<Splits> streams_;
    std::vector<Split> cur_;
    bool done_;
};

template <class F>
std::pair<ParamSet<F>, ParamSet<F>> split_set(const ParamSet<F>& xs, const Split& s) {
    return {xs.select(s.first), xs.select(s.second)};
}

// Verifies the minor expansion of det(A+B) over simultaneous row/column
// partitions, in both its raw form (explicit split signs) and its dressed
// form (signs absorbed into the prefactors of the sub-determinants):
//
//  raw:     det(A+B) = sum over (u_I,u_II),(v_I,v_II) with |u_I| = |v_I| of
//           (-1)^{[Pu]+[Pv]} det A(u_I|v_I) det B(u_II|v_II)
//  dressed: Delta(u) Delta'(v) det(A+B)
//         = sum  cal{A}(u_I|v_I) cal{B}(u_II|v_II) g(u_II,u_I) g(v_I,v_II)
//  with cal{A}(u|v) = Delta(u) Delta'(v) det A(u_j, v_k).
//
// A and B are entry generators called with parameter values.
template <class F, class GenA, class GenB>
bool laplace_check(GenA A, GenB B, const ParamSet<F>& us, const ParamSet<F>& vs,
                   const KernelCtx<F>& kc) {
    const int n = static_cast<int>(us.size());
    if (vs.size() != us.size())
        throw CardinalityMismatchError("laplace expansion needs equally sized sets");

    auto sub_det = [&](auto gen, const ParamSet<F>& ur, const ParamSet<F>& vc) {
        Matrix<F> m(ur.size(), vc.size());
        for (size_t r = 0; r < ur.size(); ++r)
            for (size_t c = 0; c < vc.size(); ++c) m.at(r, c) = gen(ur[r], vc[c]);
        return det_exact(std::move(m));
    };
    auto gen_sum = [&](const F& x, const F& y) { return A(x, y) + B(x, y); };

    F total = sub_det(gen_sum, us, vs);

    F raw = F::zero();
    F dressed = F::zero();
    for (int k = 0; k <= n; ++k) {
        for (MultiSplits ms({{n, k}, {n, k}}); !ms.done(); ms.advance()) {
            const Split& su = ms.get()[0];
            const Split& sv = ms.get()[1];
            auto [uI, uII] = split_set(us, su);
            auto [vI, vII] = split_set(vs, sv);
            F detA = sub_det(A, uI, vI);
            F detB = sub_det(B, uII, vII);
            F signed_term = detA * detB;
            if (su.sign * sv.sign < 0) signed_term = -signed_term;
            raw = raw + signed_term;
            dressed = dressed + kc.delta(uI) * kc.delta_prime(vI) * detA * kc.delta(uII) *
                                    kc.delta_prime(vII) * detB * kc.gprod(uII, uI) *
                                    kc.gprod(vI, vII);
        }
    }
    bool raw_ok = raw == total;
    bool dressed_ok = dressed == kc.delta(us) * kc.delta_prime(vs) * total;
    return raw_ok && dressed_ok;
}

} // namespace bethe
