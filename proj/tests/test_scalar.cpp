#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bethe/random_draw.hpp>
#include <bethe/scalar_product.hpp>

using bethe::BetheConfig;
using bethe::DrawOptions;
using bethe::GaussianRational;
using bethe::RandomSource;
using bethe::SumStats;
using bethe::Variant;
using Q = GaussianRational;

namespace {

std::uint64_t binom(int n, int k) { return bethe::Splits::count(n, k); }

// Independent bookkeeping for the partition-sum sizes.
SumStats expected_stats(int a, int b) {
    SumStats st;
    for (int k = 0; k <= a; ++k)
        for (int n = 0; n <= b; ++n) {
            const std::uint64_t outer = binom(a, k) * binom(a, k) * binom(b, n) * binom(b, n);
            st.outer_terms += outer;
            st.z_terms += outer * (binom(a - k + n, a - k) + binom(k + b - n, k));
        }
    return st;
}

} // namespace

TEST_CASE("empty configuration has unit scalar product") {
    BetheConfig<Q> cfg;
    cfg.c = Q(1);
    cfg.validate();
    const auto r = bethe::apply_constraints(cfg, Variant::SemiOnShell);
    SumStats st;
    CHECK(bethe::sum_formula(cfg, r, &st) == Q::one());
    CHECK(bethe::det_rep(cfg, r, Variant::SemiOnShell) == Q::one());
    CHECK(st.outer_terms == 1);
    CHECK(st.z_terms == 2);
}

TEST_CASE("partition sum equals the determinant representation") {
    RandomSource rng(501);
    for (size_t a = 0; a <= 2; ++a)
        for (size_t b = 0; b <= 2; ++b) {
            for (int trial = 0; trial < 2; ++trial) {
                DrawOptions opt;
                opt.a = a;
                opt.b = b;
                opt.height = 12;
                const auto cfg = bethe::draw_config(rng, opt);
                const auto r = bethe::apply_constraints(cfg, Variant::SemiOnShell);
                SumStats st;
                const Q lhs = bethe::sum_formula(cfg, r, &st);
                const Q rhs = bethe::det_rep(cfg, r, Variant::SemiOnShell);
                CHECK(lhs == rhs);
                const SumStats want = expected_stats(static_cast<int>(a), static_cast<int>(b));
                CHECK(st.outer_terms == want.outer_terms);
                CHECK(st.z_terms == want.z_terms);
            }
        }
}

TEST_CASE("twisted constraints give the twisted determinant representation") {
    RandomSource rng(503);
    for (size_t a = 0; a <= 2; ++a)
        for (size_t b = 0; b <= 2; ++b) {
            DrawOptions opt;
            opt.a = a;
            opt.b = b;
            opt.height = 12;
            opt.twisted = true;
            const auto cfg = bethe::draw_config(rng, opt);
            const auto r = bethe::apply_constraints(cfg, Variant::TwistedOnShell);
            CHECK(bethe::sum_formula(cfg, r) ==
                  bethe::det_rep(cfg, r, Variant::TwistedOnShell));
        }
}

TEST_CASE("variant names are stable CLI vocabulary") {
    CHECK(std::string(bethe::variant_name(Variant::SemiOnShell)) == "semi-on-shell");
    CHECK(std::string(bethe::variant_name(Variant::TwistedOnShell)) == "twisted-on-shell");
}

TEST_CASE("scalar product depends on every free r-value") {
    RandomSource rng(509);
    DrawOptions opt;
    opt.a = 2;
    opt.b = 1;
    opt.height = 12;
    auto cfg = bethe::draw_config(rng, opt);
    const auto r0 = bethe::apply_constraints(cfg, Variant::SemiOnShell);
    const Q base = bethe::sum_formula(cfg, r0);

    for (size_t j = 0; j < cfg.a(); ++j) {
        auto bumped = cfg;
        const auto* e = cfg.r1_free.find(cfg.uB[j]);
        REQUIRE(e != nullptr);
        bumped.r1_free.set(cfg.uB[j], e->value + Q::one());
        const auto r = bethe::apply_constraints(bumped, Variant::SemiOnShell);
        const Q lhs = bethe::sum_formula(bumped, r);
        CHECK(lhs != base);
        CHECK(lhs == bethe::det_rep(bumped, r, Variant::SemiOnShell));
    }
    for (size_t j = 0; j < cfg.b(); ++j) {
        auto bumped = cfg;
        const auto* e = cfg.r3_free.find(cfg.vC[j]);
        REQUIRE(e != nullptr);
        bumped.r3_free.set(cfg.vC[j], e->value + Q::one());
        const auto r = bethe::apply_constraints(bumped, Variant::SemiOnShell);
        const Q lhs = bethe::sum_formula(bumped, r);
        CHECK(lhs != base);
        CHECK(lhs == bethe::det_rep(bumped, r, Variant::SemiOnShell));
    }
}

TEST_CASE("missing free values and inconsistent twists are rejected") {
    RandomSource rng(521);
    DrawOptions opt;
    opt.a = 1;
    opt.b = 1;
    opt.with_free_r = false;
    const auto bare = bethe::draw_config(rng, opt);
    CHECK_THROWS_AS(bethe::apply_constraints(bare, Variant::SemiOnShell),
                    bethe::MissingRValueError);

    DrawOptions topt;
    topt.a = 1;
    topt.b = 1;
    topt.twisted = true;
    auto twisted = bethe::draw_config(rng, topt);
    twisted.varkappa = twisted.varkappa + Q::one(); // break varkappa = kappa2/kappa1
    CHECK_THROWS_AS(bethe::apply_constraints(twisted, Variant::TwistedOnShell),
                    bethe::ConstraintViolationError);
}

TEST_CASE("determinant matrix has the expected block frame") {
    RandomSource rng(523);
    DrawOptions opt;
    opt.a = 2;
    opt.b = 2;
    opt.height = 12;
    const auto cfg = bethe::draw_config(rng, opt);
    const auto r = bethe::apply_constraints(cfg, Variant::SemiOnShell);
    const auto N = bethe::build_N(cfg, r, Variant::SemiOnShell);
    CHECK(N.rows() == cfg.a() + cfg.b());
    CHECK(N.cols() == cfg.a() + cfg.b());
}

TEST_CASE("determinant equivalence survives exchanging the vector roles") {
    // The mirrored configuration re-applies the constraints on the swapped
    // sides, so its free values live on the original uC and vB sets.
    RandomSource rng(541);
    for (size_t a = 0; a <= 2; ++a)
        for (size_t b = 0; b <= 2; ++b) {
            DrawOptions opt;
            opt.a = a;
            opt.b = b;
            opt.height = 12;
            auto cfg = bethe::draw_config(rng, opt);
            for (size_t j = 0; j < a; ++j)
                cfg.r1_free.set(cfg.uC[j], rng.nonzero_gaussian(12));
            for (size_t j = 0; j < b; ++j)
                cfg.r3_free.set(cfg.vB[j], rng.nonzero_gaussian(12));
            CHECK(bethe::swap_CB_check(cfg));
        }
}

TEST_CASE("layer-by-layer derivation steps hold on random data") {
    RandomSource rng(547);
    for (int trial = 0; trial < 4; ++trial) {
        DrawOptions opt;
        opt.a = static_cast<size_t>(rng.integer(0, 2));
        opt.b = static_cast<size_t>(rng.integer(opt.a == 0 ? 1 : 0, 2));
        opt.height = 12;
        const auto cfg = bethe::draw_config(rng, opt);
        const auto r = bethe::apply_constraints(cfg, Variant::SemiOnShell);
        const auto out = bethe::derivation_checks(cfg, r);
        CHECK(out.lv_ok);
        CHECK(out.g_ok);
        CHECK(out.lu_ok);
        CHECK(out.factor_ok);
    }
}
