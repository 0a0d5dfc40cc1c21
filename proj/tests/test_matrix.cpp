#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bethe/errors.hpp>
#include <bethe/matrix.hpp>
#include <bethe/poly.hpp>
#include <bethe/random_draw.hpp>

using bethe::GaussianRational;
using bethe::Matrix;
using bethe::Poly;
using bethe::RatFunc;
using Q = GaussianRational;

namespace {

// Independent determinant oracle: Laplace cofactor expansion along row 0.
template <class F>
F cofactor_det(const Matrix<F>& m) {
    const size_t n = m.rows();
    if (n == 0) return F::one();
    if (n == 1) return m.at(0, 0);
    F acc = F::zero();
    for (size_t j = 0; j < n; ++j) {
        Matrix<F> minor(n - 1, n - 1);
        for (size_t r = 1; r < n; ++r)
            for (size_t s = 0, t = 0; s < n; ++s) {
                if (s == j) continue;
                minor.at(r - 1, t++) = m.at(r, s);
            }
        const F term = m.at(0, j) * cofactor_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

Matrix<Q> random_matrix(bethe::RandomSource& rng, size_t n) {
    Matrix<Q> m(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t s = 0; s < n; ++s) m.at(r, s) = rng.gaussian_rational(9);
    return m;
}

} // namespace

TEST_CASE("determinant matches the cofactor oracle") {
    bethe::RandomSource rng(11);
    for (size_t n = 0; n <= 4; ++n)
        for (int trial = 0; trial < 8; ++trial) {
            Matrix<Q> m = random_matrix(rng, n);
            CHECK(det_exact(Matrix<Q>(m)) == cofactor_det(m));
        }
}

TEST_CASE("determinant special cases") {
    CHECK(det_exact(Matrix<Q>(0, 0)) == Q::one());
    Matrix<Q> one(1, 1);
    one.at(0, 0) = Q::ratio(-7, 3);
    CHECK(det_exact(std::move(one)) == Q::ratio(-7, 3));

    // Singular by repeated row.
    Matrix<Q> s(3, 3);
    bethe::RandomSource rng(13);
    for (size_t j = 0; j < 3; ++j) s.at(0, j) = rng.gaussian_rational(9);
    for (size_t j = 0; j < 3; ++j) s.at(1, j) = rng.gaussian_rational(9);
    for (size_t j = 0; j < 3; ++j) s.at(2, j) = s.at(0, j);
    CHECK(det_exact(std::move(s)).is_zero());

    Matrix<Q> rect(2, 3);
    CHECK_THROWS_AS(det_exact(std::move(rect)), bethe::NonSquareError);
}

TEST_CASE("determinant is multiplicative") {
    bethe::RandomSource rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        Matrix<Q> a = random_matrix(rng, 3);
        Matrix<Q> b = random_matrix(rng, 3);
        Matrix<Q> ab(3, 3);
        for (size_t r = 0; r < 3; ++r)
            for (size_t s = 0; s < 3; ++s) {
                Q acc = Q::zero();
                for (size_t k = 0; k < 3; ++k) acc += a.at(r, k) * b.at(k, s);
                ab.at(r, s) = acc;
            }
        CHECK(det_exact(std::move(ab)) ==
              det_exact(Matrix<Q>(a)) * det_exact(Matrix<Q>(b)));
    }
}

TEST_CASE("rational-function determinant agrees with the cofactor oracle") {
    bethe::RandomSource rng(19);
    for (size_t n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 4; ++trial) {
            Matrix<RatFunc> m(n, n);
            for (size_t r = 0; r < n; ++r)
                for (size_t s = 0; s < n; ++s) {
                    Poly num = Poly::linear(rng.gaussian_rational(6), rng.gaussian_rational(6));
                    Poly den = Poly::linear(rng.nonzero_gaussian(6), rng.gaussian_rational(6));
                    m.at(r, s) = RatFunc(std::move(num), std::move(den));
                }
            CHECK(det_exact(Matrix<RatFunc>(m)) == cofactor_det(m));
        }
}

TEST_CASE("linear solve returns a verified solution") {
    bethe::RandomSource rng(23);
    for (size_t n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 6; ++trial) {
            Matrix<Q> m = random_matrix(rng, n);
            if (det_exact(Matrix<Q>(m)).is_zero()) continue;
            std::vector<Q> rhs(n);
            for (auto& x : rhs) x = rng.gaussian_rational(9);
            auto sol = solve_linear(Matrix<Q>(m), rhs);
            REQUIRE(sol.has_value());
            for (size_t r = 0; r < n; ++r) {
                Q acc = Q::zero();
                for (size_t k = 0; k < n; ++k) acc += m.at(r, k) * (*sol)[k];
                CHECK(acc == rhs[r]);
            }
        }
}

TEST_CASE("linear solve reports singular and ill-shaped systems") {
    Matrix<Q> s(2, 2);
    s.at(0, 0) = Q(1);
    s.at(0, 1) = Q(2);
    s.at(1, 0) = Q(2);
    s.at(1, 1) = Q(4);
    CHECK_FALSE(solve_linear(std::move(s), std::vector<Q>{Q(1), Q(1)}).has_value());

    Matrix<Q> rect(2, 3);
    CHECK_THROWS_AS(solve_linear(std::move(rect), std::vector<Q>{Q(1), Q(1)}),
                    bethe::NonSquareError);
    Matrix<Q> sq(2, 2);
    CHECK_THROWS_AS(solve_linear(std::move(sq), std::vector<Q>{Q(1)}), bethe::NonSquareError);
}

TEST_CASE("hermite interpolant reproduces values and first derivatives") {
    bethe::RandomSource rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const size_t n = 1 + static_cast<size_t>(rng.integer(0, 3));
        std::vector<Q> pts, vals, ders;
        std::vector<Q> pool;
        for (size_t j = 0; j < n; ++j) {
            // Pairwise distinct interpolation nodes.
            Q p;
            bool fresh = false;
            while (!fresh) {
                p = rng.gaussian_rational(12);
                fresh = true;
                for (const auto& q : pool)
                    if (q == p) fresh = false;
            }
            pool.push_back(p);
            pts.push_back(p);
            vals.push_back(rng.gaussian_rational(12));
            ders.push_back(rng.gaussian_rational(12));
        }
        const Poly h = bethe::hermite_interpolant(pts, vals, ders);
        CHECK(h.degree() <= static_cast<int>(2 * n) - 1);
        const Poly hp = h.derivative();
        for (size_t j = 0; j < n; ++j) {
            CHECK(h.eval(pts[j]) == vals[j]);
            CHECK(hp.eval(pts[j]) == ders[j]);
        }
    }
}

TEST_CASE("hermite interpolant rejects bad data") {
    const std::vector<Q> pts{Q(1), Q(1)};
    const std::vector<Q> vals{Q(2), Q(3)};
    const std::vector<Q> ders{Q(0), Q(0)};
    CHECK_THROWS_AS(bethe::hermite_interpolant(pts, vals, ders), bethe::DuplicatePointsError);
    CHECK_THROWS_AS(bethe::hermite_interpolant({Q(1)}, {Q(2), Q(3)}, {Q(0)}),
                    bethe::CardinalityMismatchError);
    CHECK(bethe::hermite_interpolant({}, {}, {}).is_zero());
}
