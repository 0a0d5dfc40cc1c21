#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bethe/rational.hpp"

namespace bethe {

// Univariate polynomial over GaussianRational, stored dense with the
// leading coefficient nonzero (the zero polynomial has no coefficients).
// Used both for the formal variable of the deformation field and for
// interpolants in a spectral variable.
class Poly {
public:
    Poly() = default;
    explicit Poly(GaussianRational constant);
    explicit Poly(std::vector<GaussianRational> coeffs);

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(GaussianRational::one()); }
    // a0 + a1*x
    static Poly linear(GaussianRational a0, GaussianRational a1);
    static Poly variable() { return linear(GaussianRational::zero(), GaussianRational::one()); }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<GaussianRational>& coeffs() const { return c_; }
    GaussianRational coeff(size_t k) const {
        return k < c_.size() ? c_[k] : GaussianRational::zero();
    }
    const GaussianRational& leading() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const GaussianRational& s) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative() const;
    GaussianRational at_zero() const { return coeff(0); }

    // Evaluation by Horner's rule at any field element (scalar or
    // rational-function argument).
    template <class F>
    F eval(const F& x) const {
        F acc = F::zero();
        for (size_t k = c_.size(); k-- > 0;) acc = acc * x + F::from_rational(c_[k]);
        return acc;
    }

    // Quotient and remainder; divisor must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);
    // Division known to be exact; throws on a nonzero remainder.
    static Poly divide_exact(const Poly& num, const Poly& den);
    // Monic greatest common divisor; gcd(0,0) = 0.
    static Poly gcd(Poly x, Poly y);

    Poly monic() const;
    std::string str(const std::string& var = "e") const;

private:
    void trim();
    std::vector<GaussianRational> c_;
};

// Quotient of two Polys, stored reduced: gcd(num, den) = 1 and the
// denominator monic.  Field operations are exact; equality of reduced
// forms is equality of rational functions.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::one()) {}
    explicit RatFunc(long n) : num_(Poly(GaussianRational(n))), den_(Poly::one()) {}
    RatFunc(Poly num, Poly den);

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(1); }
    static RatFunc from_int(long n) { return RatFunc(n); }
    static RatFunc from_rational(const GaussianRational& q) {
        return RatFunc(Poly(q), Poly::one());
    }
    // The formal variable itself.
    static RatFunc eps() { return RatFunc(Poly::variable(), Poly::one()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    // Value at the origin of the formal variable; PoleAtZero when the
    // reduced denominator vanishes there.
    GaussianRational value_at_zero() const;
    // First derivative at the origin, computed from the quotient rule.
    GaussianRational derivative_at_zero() const;
    // Exact evaluation at a scalar argument.
    GaussianRational eval_at(const GaussianRational& x) const;

    std::string str(const std::string& var = "e") const;

private:
    void reduce();
    Poly num_, den_;
};

} // namespace bethe
