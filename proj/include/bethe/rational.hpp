#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace bethe {

// Complex number with arbitrary-precision rational real and imaginary parts.
// Both components are kept in GMP canonical form (coprime, positive
// denominator), so operator== is exact structural equality.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    explicit GaussianRational(long n) : re_(n), im_(0) {}
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }
    static GaussianRational from_int(long n) { return GaussianRational(n); }
    static GaussianRational from_rational(const GaussianRational& q) { return q; }
    // num/den pair for the real part, zero imaginary part.
    static GaussianRational ratio(long num, long den);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    GaussianRational operator+(const GaussianRational& o) const {
        return GaussianRational(re_ + o.re_, im_ + o.im_);
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return GaussianRational(re_ - o.re_, im_ - o.im_);
    }
    GaussianRational operator*(const GaussianRational& o) const {
        return GaussianRational(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    GaussianRational operator/(const GaussianRational& o) const;

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

    bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }
    // |z|^2 as a rational; zero iff z is zero.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    // Canonical text form: "p/q" for real values, "p/q+r/si" / "p/q-r/si"
    // otherwise; integer components drop the "/1".  str() and parse()
    // round-trip exactly.
    std::string str() const;
    static GaussianRational parse(const std::string& text);

private:
    mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& q);

std::string mpq_to_string(const mpq_class& q);

} // namespace bethe
