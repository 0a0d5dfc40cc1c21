#include "bethe/poly.hpp"

#include "bethe/errors.hpp"

namespace bethe {

Poly::Poly(GaussianRational constant) {
    if (!constant.is_zero()) c_.push_back(std::move(constant));
}

Poly::Poly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::linear(GaussianRational a0, GaussianRational a1) {
    return Poly(std::vector<GaussianRational>{std::move(a0), std::move(a1)});
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const GaussianRational& Poly::leading() const {
    static const GaussianRational zero_value;
    return c_.empty() ? zero_value : c_.back();
}

Poly Poly::operator-() const {
    Poly r;
    r.c_.reserve(c_.size());
    for (const auto& x : c_) r.c_.push_back(-x);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<GaussianRational> out(std::max(c_.size(), o.c_.size()));
    for (size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) + o.coeff(k);
    return Poly(std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<GaussianRational> out(std::max(c_.size(), o.c_.size()));
    for (size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) - o.coeff(k);
    return Poly(std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<GaussianRational> out(c_.size() + o.c_.size() - 1);
    for (size_t j = 0; j < c_.size(); ++j)
        for (size_t k = 0; k < o.c_.size(); ++k) out[j + k] += c_[j] * o.c_[k];
    return Poly(std::move(out));
}

Poly Poly::operator*(const GaussianRational& s) const {
    if (s.is_zero()) return Poly();
    Poly r;
    r.c_.reserve(c_.size());
    for (const auto& x : c_) r.c_.push_back(x * s);
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<GaussianRational> out(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * GaussianRational(static_cast<long>(k));
    return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    Poly rem = num;
    if (num.degree() < den.degree()) return {Poly(), rem};
    std::vector<GaussianRational> q(num.degree() - den.degree() + 1);
    const GaussianRational inv_lead = GaussianRational::one() / den.leading();
    while (!rem.is_zero() && rem.degree() >= den.degree()) {
        size_t shift = static_cast<size_t>(rem.degree() - den.degree());
        GaussianRational factor = rem.leading() * inv_lead;
        q[shift] = factor;
        std::vector<GaussianRational> sub(shift + den.c_.size());
        for (size_t k = 0; k < den.c_.size(); ++k) sub[shift + k] = den.c_[k] * factor;
        rem = rem - Poly(std::move(sub));
    }
    return {Poly(std::move(q)), rem};
}

Poly Poly::divide_exact(const Poly& num, const Poly& den) {
    auto [q, r] = divmod(num, den);
    if (!r.is_zero()) throw DivisionByZeroError("inexact polynomial division");
    return q;
}

Poly Poly::gcd(Poly x, Poly y) {
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly Poly::monic() const {
    if (is_zero()) return Poly();
    return *this * (GaussianRational::one() / leading());
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t k = c_.size(); k-- > 0;) {
        if (c_[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c_[k].str() + ")";
        if (k >= 1) out += "*" + var;
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZeroError("rational function with zero denominator");
    reduce();
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::one();
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = Poly::divide_exact(num_, g);
        den_ = Poly::divide_exact(den_, g);
    }
    GaussianRational inv_lead = GaussianRational::one() / den_.leading();
    num_ = num_ * inv_lead;
    den_ = den_ * inv_lead;
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    // Cross-reduce by the denominator gcd to limit degree growth.
    Poly g = Poly::gcd(den_, o.den_);
    if (g.degree() <= 0) return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    Poly da = Poly::divide_exact(den_, g);
    Poly db = Poly::divide_exact(o.den_, g);
    return RatFunc(num_ * db + o.num_ * da, da * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    Poly g1 = Poly::gcd(num_, o.den_);
    Poly g2 = Poly::gcd(o.num_, den_);
    Poly n1 = g1.degree() > 0 ? Poly::divide_exact(num_, g1) : num_;
    Poly d2 = g1.degree() > 0 ? Poly::divide_exact(o.den_, g1) : o.den_;
    Poly n2 = g2.degree() > 0 ? Poly::divide_exact(o.num_, g2) : o.num_;
    Poly d1 = g2.degree() > 0 ? Poly::divide_exact(den_, g2) : den_;
    return RatFunc(n1 * n2, d1 * d2);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DivisionByZeroError("division by zero rational function");
    RatFunc inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    inv.reduce();
    return *this * inv;
}

GaussianRational RatFunc::value_at_zero() const {
    GaussianRational d0 = den_.at_zero();
    if (d0.is_zero()) throw PoleAtZeroError("rational function has a pole at the origin");
    return num_.at_zero() / d0;
}

GaussianRational RatFunc::derivative_at_zero() const {
    GaussianRational d0 = den_.at_zero();
    if (d0.is_zero()) throw PoleAtZeroError("rational function has a pole at the origin");
    GaussianRational n0 = num_.at_zero();
    GaussianRational n1 = num_.derivative().at_zero();
    GaussianRational d1 = den_.derivative().at_zero();
    return (n1 * d0 - n0 * d1) / (d0 * d0);
}

GaussianRational RatFunc::eval_at(const GaussianRational& x) const {
    GaussianRational d = den_.eval(x);
    if (d.is_zero()) throw PoleAtZeroError("rational function has a pole at evaluation point");
    return num_.eval(x) / d;
}

std::string RatFunc::str(const std::string& var) const {
    if (den_ == Poly::one()) return num_.str(var);
    return "[" + num_.str(var) + "] / [" + den_.str(var) + "]";
}

} // namespace bethe
