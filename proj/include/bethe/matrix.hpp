#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bethe/errors.hpp"
#include "bethe/poly.hpp"

namespace bethe {

// Dense matrix over an exact field.  Determinants use Bareiss
// exact-division elimination with a full search for a nonzero pivot;
// every division performed is exact.
template <class F>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, F::zero()) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t k = 0; k < n; ++k) m.at(k, k) = F::one();
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    F& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const F& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

private:
    size_t rows_, cols_;
    std::vector<F> e_;
};

namespace detail {

// Bareiss elimination over any exact integral domain with division via
// Divide(num, den).  Consumes the matrix.  The 0x0 determinant is 1.
template <class F, class Divide>
F det_bareiss(Matrix<F>&& m, Divide divide) {
    const size_t n = m.rows();
    if (n == 0) return F::one();
    bool negate = false;
    F prev = F::one();
    for (size_t k = 0; k + 1 < n; ++k) {
        // Full pivot search: any nonzero entry of the trailing block works.
        size_t pr = n, pc = n;
        for (size_t r = k; r < n && pr == n; ++r)
            for (size_t c = k; c < n; ++c)
                if (!m.at(r, c).is_zero()) {
                    pr = r;
                    pc = c;
                    break;
                }
        if (pr == n) return F::zero();
        if (pr != k) {
            for (size_t c = k; c < n; ++c) std::swap(m.at(k, c), m.at(pr, c));
            negate = !negate;
        }
        if (pc != k) {
            for (size_t r = k; r < n; ++r) std::swap(m.at(r, k), m.at(r, pc));
            negate = !negate;
        }
        for (size_t r = k + 1; r < n; ++r)
            for (size_t c = k + 1; c < n; ++c)
                m.at(r, c) =
                    divide(m.at(r, c) * m.at(k, k) - m.at(r, k) * m.at(k, c), prev);
        prev = m.at(k, k);
    }
    F det = m.at(n - 1, n - 1);
    return negate ? -det : det;
}

} // namespace detail

template <class F>
F det_exact(Matrix<F> m) {
    if (m.rows() != m.cols())
        throw NonSquareError("determinant of a " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + " matrix");
    return detail::det_bareiss(std::move(m), [](const F& num, const F& den) { return num / den; });
}

// Rational-function determinants clear each row's denominators first and
// eliminate over the polynomial ring, where Bareiss divisions stay exact;
// this avoids per-operation gcd reduction inside the elimination.
inline RatFunc det_exact(Matrix<RatFunc> m) {
    if (m.rows() != m.cols())
        throw NonSquareError("determinant of a " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + " matrix");
    const size_t n = m.rows();
    if (n == 0) return RatFunc::one();
    Matrix<Poly> p(n, n);
    Poly scale = Poly::one();
    for (size_t r = 0; r < n; ++r) {
        Poly common = Poly::one();
        for (size_t c = 0; c < n; ++c) {
            const Poly& d = m.at(r, c).den();
            Poly g = Poly::gcd(common, d);
            common = common * Poly::divide_exact(d, g);
        }
        for (size_t c = 0; c < n; ++c)
            p.at(r, c) = m.at(r, c).num() * Poly::divide_exact(common, m.at(r, c).den());
        scale = scale * common;
    }
    Poly det = detail::det_bareiss(std::move(p), [](const Poly& num, const Poly& den) {
        return Poly::divide_exact(num, den);
    });
    return RatFunc(det, scale);
}

// Exact Gauss-Jordan solve of a square system; empty result when the
// matrix is singular.  All divisions are by field elements, hence exact.
template <class F>
std::optional<std::vector<F>> solve_linear(Matrix<F> m, std::vector<F> rhs) {
    const size_t n = m.rows();
    if (m.cols() != n || rhs.size() != n) throw NonSquareError("solve needs a square system");
    for (size_t k = 0; k < n; ++k) {
        size_t pr = n;
        for (size_t r = k; r < n; ++r)
            if (!m.at(r, k).is_zero()) {
                pr = r;
                break;
            }
        if (pr == n) return std::nullopt;
        if (pr != k) {
            for (size_t c = k; c < n; ++c) std::swap(m.at(pr, c), m.at(k, c));
            std::swap(rhs[pr], rhs[k]);
        }
        const F inv = F::one() / m.at(k, k);
        for (size_t c = k; c < n; ++c) m.at(k, c) = m.at(k, c) * inv;
        rhs[k] = rhs[k] * inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == k || m.at(r, k).is_zero()) continue;
            const F factor = m.at(r, k);
            for (size_t c = k; c < n; ++c) m.at(r, c) = m.at(r, c) - factor * m.at(k, c);
            rhs[r] = rhs[r] - factor * rhs[k];
        }
    }
    return rhs;
}

// Hermite interpolation: the unique polynomial of degree <= 2n-1 with
// prescribed values and first derivatives at n distinct points, built from
// Newton divided differences on doubled nodes.
inline Poly hermite_interpolant(const std::vector<GaussianRational>& points,
                                const std::vector<GaussianRational>& values,
                                const std::vector<GaussianRational>& derivs) {
    const size_t n = points.size();
    if (values.size() != n || derivs.size() != n)
        throw CardinalityMismatchError("hermite data sizes disagree");
    for (size_t j = 0; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k)
            if (points[j] == points[k])
                throw DuplicatePointsError("hermite point " + points[j].str() + " repeated");
    if (n == 0) return Poly();

    const size_t m = 2 * n;
    std::vector<GaussianRational> z(m), d(m);
    for (size_t j = 0; j < n; ++j) {
        z[2 * j] = z[2 * j + 1] = points[j];
        d[2 * j] = d[2 * j + 1] = values[j];
    }
    // Successive divided-difference columns; coincident leading nodes take
    // the prescribed derivative.
    std::vector<GaussianRational> newton;
    newton.reserve(m);
    newton.push_back(d[0]);
    for (size_t col = 1; col < m; ++col) {
        for (size_t row = 0; row + col < m; ++row) {
            if (col == 1 && z[row] == z[row + 1]) {
                d[row] = derivs[row / 2];
            } else {
                d[row] = (d[row + 1] - d[row]) / (z[row + col] - z[row]);
            }
        }
        newton.push_back(d[0]);
    }
    // Expand the Newton form into monomial coefficients.
    Poly acc(newton[m - 1]);
    for (size_t k = m - 1; k-- > 0;) {
        acc = acc * Poly::linear(-z[k], GaussianRational::one()) + Poly(newton[k]);
    }
    return acc;
}

} // namespace bethe
