#include "bethe/rational.hpp"

#include <cctype>
#include <ostream>

#include "bethe/errors.hpp"

namespace bethe {

GaussianRational GaussianRational::ratio(long num, long den) {
    if (den == 0) throw DivisionByZeroError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return GaussianRational(q, mpq_class(0));
}

GaussianRational GaussianRational::operator/(const GaussianRational& o) const {
    if (o.is_zero()) throw DivisionByZeroError("division by zero GaussianRational");
    mpq_class n = o.norm();
    GaussianRational num = *this * o.conj();
    return GaussianRational(num.re_ / n, num.im_ / n);
}

std::string mpq_to_string(const mpq_class& q) { return q.get_str(); }

namespace {

// Appends q to out, prefixing the sign explicitly when force_sign is set.
void append_mpq(std::string& out, const mpq_class& q, bool force_sign) {
    if (force_sign && q >= 0) out += '+';
    out += q.get_str();
}

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    bool at_end() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
};

[[noreturn]] void fail(const Cursor& c, const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(c.pos) + " in \"" + c.s + "\"");
}

mpz_class parse_digits(Cursor& c) {
    size_t start = c.pos;
    while (!c.at_end() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
    if (c.pos == start) fail(c, "expected digits");
    return mpz_class(c.s.substr(start, c.pos - start), 10);
}

// sign? digits ('/' digits)?  The leading sign is consumed by the caller.
mpq_class parse_unsigned_rational(Cursor& c) {
    mpz_class num = parse_digits(c);
    mpz_class den = 1;
    if (!c.at_end() && c.peek() == '/') {
        ++c.pos;
        den = parse_digits(c);
        if (den == 0) fail(c, "zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

} // namespace

std::string GaussianRational::str() const {
    std::string out;
    append_mpq(out, re_, false);
    if (im_ != 0) {
        append_mpq(out, im_, true);
        out += 'i';
    }
    return out;
}

GaussianRational GaussianRational::parse(const std::string& text) {
    Cursor c{text};
    if (c.at_end()) fail(c, "empty literal");

    bool neg = false;
    if (c.peek() == '+' || c.peek() == '-') {
        neg = c.peek() == '-';
        ++c.pos;
    }

    if (!c.at_end() && c.peek() == 'i') {
        // Bare imaginary unit: "i", "-i".
        ++c.pos;
        if (!c.at_end()) fail(c, "trailing characters");
        return GaussianRational(mpq_class(0), neg ? mpq_class(-1) : mpq_class(1));
    }

    mpq_class first = parse_unsigned_rational(c);
    if (neg) first = -first;

    if (c.at_end()) return GaussianRational(first, mpq_class(0));

    if (c.peek() == 'i') {
        // Pure imaginary literal such as "1/4i" or "-2i".
        ++c.pos;
        if (!c.at_end()) fail(c, "trailing characters");
        return GaussianRational(mpq_class(0), first);
    }

    if (c.peek() != '+' && c.peek() != '-') fail(c, "expected '+', '-' or 'i'");
    bool neg_im = c.peek() == '-';
    ++c.pos;
    // Unit imaginary tail: "1+i", "2-i".
    mpq_class second = (!c.at_end() && c.peek() == 'i') ? mpq_class(1)
                                                        : parse_unsigned_rational(c);
    if (neg_im) second = -second;
    if (c.at_end() || c.peek() != 'i') fail(c, "expected 'i'");
    ++c.pos;
    if (!c.at_end()) fail(c, "trailing characters");
    return GaussianRational(first, second);
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << q.str(); }

} // namespace bethe
