#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bethe/dwpf.hpp>
#include <bethe/errors.hpp>
#include <bethe/random_draw.hpp>

using bethe::GaussianRational;
using bethe::KernelCtx;
using bethe::ParamSet;
using Q = GaussianRational;

namespace {

ParamSet<Q> draw_set(bethe::RandomSource& rng, size_t n, const Q& c, std::vector<Q>& pool,
                     const std::string& label) {
    return ParamSet<Q>(bethe::draw_points(rng, n, 15, true, c, pool), label);
}

} // namespace

TEST_CASE("domain-wall partition function on frozen inputs") {
    const KernelCtx<Q> kc(Q(1));
    CHECK(bethe::K(ParamSet<Q>("u"), ParamSet<Q>("v"), kc) == Q::one());
    CHECK(bethe::K(ParamSet<Q>({Q(4), Q(7)}, "u"), ParamSet<Q>({Q(1), Q(2)}, "v"), kc) ==
          Q::ratio(1, 5));
    CHECK_THROWS_AS(bethe::K(ParamSet<Q>({Q(4)}, "u"), ParamSet<Q>("v"), kc),
                    bethe::CardinalityMismatchError);
}

TEST_CASE("one-point partition function reduces to the g kernel") {
    bethe::RandomSource rng(331);
    for (int trial = 0; trial < 20; ++trial) {
        const Q c = rng.nonzero_gaussian(10);
        const KernelCtx<Q> kc(c);
        std::vector<Q> pool;
        const auto us = draw_set(rng, 1, c, pool, "u");
        const auto vs = draw_set(rng, 1, c, pool, "v");
        CHECK(bethe::K(us, vs, kc) == kc.g(us[0], vs[0]));
    }
}

TEST_CASE("partition-function symmetry in each argument set") {
    bethe::RandomSource rng(337);
    const Q c = rng.nonzero_gaussian(10);
    const KernelCtx<Q> kc(c);
    std::vector<Q> pool;
    const auto us = draw_set(rng, 3, c, pool, "u");
    const auto vs = draw_set(rng, 3, c, pool, "v");
    const Q base = bethe::K(us, vs, kc);
    CHECK(bethe::K(us.select({2, 0, 1}), vs, kc) == base);
    CHECK(bethe::K(us, vs.select({1, 2, 0}), kc) == base);
    CHECK(bethe::K(us.select({1, 0, 2}), vs.select({2, 1, 0}), kc) == base);
}

TEST_CASE("g-product resummation lemma") {
    bethe::RandomSource rng(347);
    for (int trial = 0; trial < 12; ++trial) {
        const Q c = rng.nonzero_gaussian(8);
        const KernelCtx<Q> kc(c);
        std::vector<Q> pool;
        const size_t m1 = static_cast<size_t>(rng.integer(0, 2));
        const size_t m2 = static_cast<size_t>(rng.integer(m1 == 0 ? 1 : 0, 2));
        const auto us = draw_set(rng, m1, c, pool, "u");
        const auto vs = draw_set(rng, m2, c, pool, "v");
        const auto ws = draw_set(rng, m1 + m2, c, pool, "w");
        CHECK(bethe::lemma_gg_check(ws, us, vs, kc));
    }
    const KernelCtx<Q> kc(Q(2));
    CHECK_THROWS_AS(bethe::lemma_gg_check(ParamSet<Q>({Q(1)}, "w"), ParamSet<Q>({Q(5)}, "u"),
                                          ParamSet<Q>({Q(9)}, "v"), kc),
                    bethe::CardinalityMismatchError);
}

TEST_CASE("two-factor partition-function resummation lemma") {
    bethe::RandomSource rng(353);
    for (int trial = 0; trial < 10; ++trial) {
        const Q c = rng.nonzero_gaussian(8);
        const KernelCtx<Q> kc(c);
        std::vector<Q> pool;
        const size_t m1 = static_cast<size_t>(rng.integer(0, 2));
        const size_t m2 = static_cast<size_t>(rng.integer(m1 == 0 ? 1 : 0, 2));
        const auto us = draw_set(rng, m1, c, pool, "u");
        const auto vs = draw_set(rng, m2, c, pool, "v");
        const auto ws = draw_set(rng, m1 + m2, c, pool, "w");
        CHECK(bethe::lemma_KK_check(ws, us, vs, kc));
    }
}

TEST_CASE("long determinant resummation with free coefficient tables") {
    bethe::RandomSource rng(359);
    for (int trial = 0; trial < 10; ++trial) {
        const Q c = rng.nonzero_gaussian(8);
        const KernelCtx<Q> kc(c);
        std::vector<Q> pool;
        const size_t m = static_cast<size_t>(rng.integer(1, 3));
        const auto ws = draw_set(rng, m, c, pool, "w");
        const auto xis = draw_set(rng, m, c, pool, "xi");
        std::vector<Q> C1, C2;
        for (size_t j = 0; j < m; ++j) {
            C1.push_back(rng.gaussian_rational(8));
            C2.push_back(rng.gaussian_rational(8));
        }
        CHECK(bethe::lemma_longdet_check(ws, xis, C1, C2, kc));
    }
}

TEST_CASE("row stacking reassembles a block determinant") {
    bethe::RandomSource rng(367);
    for (int trial = 0; trial < 10; ++trial) {
        const Q c = rng.nonzero_gaussian(8);
        const KernelCtx<Q> kc(c);
        std::vector<Q> pool;
        const int a = static_cast<int>(rng.integer(0, 2));
        const int b = static_cast<int>(rng.integer(a == 0 ? 1 : 0, 2));
        const auto xs = draw_set(rng, static_cast<size_t>(a + b), c, pool, "x");

        // Random polynomial rows: row j evaluates p_j at the point.
        std::vector<std::vector<Q>> rowsA, rowsB;
        for (int j = 0; j < a; ++j)
            rowsA.push_back({rng.gaussian_rational(6), rng.gaussian_rational(6),
                             rng.gaussian_rational(6)});
        for (int j = 0; j < b; ++j)
            rowsB.push_back({rng.gaussian_rational(6), rng.gaussian_rational(6),
                             rng.gaussian_rational(6)});
        auto A = [&](int j, const Q& x) {
            const auto& r = rowsA[static_cast<size_t>(j)];
            return r[0] + r[1] * x + r[2] * x * x;
        };
        auto B = [&](int j, const Q& x) {
            const auto& r = rowsB[static_cast<size_t>(j)];
            return r[0] + r[1] * x + r[2] * x * x;
        };
        CHECK(bethe::row_stack_check(A, B, xs, a, b, kc));
    }
}

TEST_CASE("cauchy determinant identities") {
    bethe::RandomSource rng(373);
    for (int trial = 0; trial < 10; ++trial) {
        const Q c = rng.nonzero_gaussian(8);
        const KernelCtx<Q> kc(c);
        std::vector<Q> pool;
        const size_t n = static_cast<size_t>(rng.integer(1, 4));
        const auto us = draw_set(rng, n, c, pool, "u");
        const auto vs = draw_set(rng, n, c, pool, "v");
        CHECK(bethe::cauchy_identities(us, vs, kc));
    }
}

TEST_CASE("weighted single-row sums match their closed forms") {
    bethe::RandomSource rng(379);
    for (int trial = 0; trial < 8; ++trial) {
        bethe::DrawOptions opt;
        opt.a = static_cast<size_t>(rng.integer(0, 2));
        opt.b = static_cast<size_t>(rng.integer(opt.a == 0 ? 1 : 0, 2));
        opt.height = 12;
        const auto cfg = bethe::draw_config(rng, opt);
        CHECK(bethe::single_sum_checks(cfg));
    }
}
