#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bethe/errors.hpp>
#include <bethe/highest.hpp>
#include <bethe/random_draw.hpp>

using bethe::GaussianRational;
using bethe::KernelCtx;
using bethe::ParamSet;
using bethe::ZArgs;
using Q = GaussianRational;

namespace {

ZArgs<Q> draw_zargs(bethe::RandomSource& rng, size_t a, size_t b, const Q& c) {
    std::vector<Q> pool;
    ZArgs<Q> za;
    za.t = ParamSet<Q>(bethe::draw_points(rng, a, 15, true, c, pool), "t");
    za.x = ParamSet<Q>(bethe::draw_points(rng, a, 15, true, c, pool), "x");
    za.s = ParamSet<Q>(bethe::draw_points(rng, b, 15, true, c, pool), "s");
    za.y = ParamSet<Q>(bethe::draw_points(rng, b, 15, true, c, pool), "y");
    return za;
}

} // namespace

TEST_CASE("degenerate highest coefficients") {
    const KernelCtx<Q> kc(Q(1));
    ZArgs<Q> za; // all sets empty
    CHECK(bethe::Z_omega(za, kc) == Q::one());
    CHECK(bethe::Z_eta(za, kc) == Q::one());
}

TEST_CASE("pure first-level highest coefficient is a partition function") {
    // With no second-level arguments the omega sum has a single term
    // K_a(x|t); the eta route must reproduce it.
    bethe::RandomSource rng(401);
    for (int trial = 0; trial < 10; ++trial) {
        const Q c = rng.nonzero_gaussian(10);
        const KernelCtx<Q> kc(c);
        const auto za = draw_zargs(rng, static_cast<size_t>(rng.integer(1, 3)), 0, c);
        const Q direct = bethe::K(za.x, za.t, kc);
        CHECK(bethe::Z_omega(za, kc) == direct);
        CHECK(bethe::Z_eta(za, kc) == direct);
    }
}

TEST_CASE("pure second-level highest coefficient on frozen inputs") {
    // a = 0, b = 1: the omega sum is a single term g(s, y), and the eta
    // route gives f(s,t) f(y,x) / h(s, y+c) with empty t, x.
    const KernelCtx<Q> kc(Q(1));
    ZArgs<Q> za;
    za.s = ParamSet<Q>({Q(5)}, "s");
    za.y = ParamSet<Q>({Q(2)}, "y");
    CHECK(bethe::Z_omega(za, kc) == kc.g(Q(5), Q(2)));
    CHECK(bethe::Z_eta(za, kc) == bethe::Z_omega(za, kc));
}

TEST_CASE("both representations of the highest coefficient agree") {
    bethe::RandomSource rng(409);
    for (size_t a = 0; a <= 3; ++a)
        for (size_t b = 0; b <= 3; ++b) {
            if (a + b == 0) continue;
            for (int trial = 0; trial < 3; ++trial) {
                const Q c = rng.nonzero_gaussian(10);
                const KernelCtx<Q> kc(c);
                const auto za = draw_zargs(rng, a, b, c);
                CHECK(bethe::Z_omega(za, kc) == bethe::Z_eta(za, kc));
            }
        }
}

TEST_CASE("highest coefficient is symmetric within each argument set") {
    bethe::RandomSource rng(419);
    const Q c = rng.nonzero_gaussian(10);
    const KernelCtx<Q> kc(c);
    auto za = draw_zargs(rng, 2, 2, c);
    const Q base = bethe::Z_omega(za, kc);

    auto perm = za;
    perm.t = za.t.select({1, 0});
    CHECK(bethe::Z_omega(perm, kc) == base);
    perm = za;
    perm.x = za.x.select({1, 0});
    CHECK(bethe::Z_omega(perm, kc) == base);
    perm = za;
    perm.s = za.s.select({1, 0});
    CHECK(bethe::Z_omega(perm, kc) == base);
    perm = za;
    perm.y = za.y.select({1, 0});
    CHECK(bethe::Z_omega(perm, kc) == base);
}

TEST_CASE("mismatched cardinalities are rejected") {
    const KernelCtx<Q> kc(Q(1));
    ZArgs<Q> za;
    za.t = ParamSet<Q>({Q(3)}, "t");
    CHECK_THROWS_AS(bethe::Z_omega(za, kc), bethe::CardinalityMismatchError);
    CHECK_THROWS_AS(bethe::Z_eta(za, kc), bethe::CardinalityMismatchError);
}
