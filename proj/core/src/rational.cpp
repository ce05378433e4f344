#include "formdim/rational.hpp"

#include <numeric>

namespace formdim {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("rational addition overflowed int64");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("rational multiplication overflowed int64");
    return r;
}

std::int64_t checked_neg(std::int64_t a) {
    std::int64_t r;
    if (__builtin_sub_overflow(std::int64_t{0}, a, &r))
        throw OverflowError("rational negation overflowed int64");
    return r;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0)
        throw Error("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = checked_neg(num_);
        den_ = checked_neg(den_);
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = checked_neg(num_);
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    // reduce by gcd of denominators first to keep intermediates small
    const std::int64_t g = std::gcd(den_, o.den_);
    const std::int64_t da = den_ / g;
    const std::int64_t db = o.den_ / g;
    const std::int64_t n = checked_add(checked_mul(num_, db), checked_mul(o.num_, da));
    const std::int64_t d = checked_mul(den_, db);
    return Rational(n, d);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    const std::int64_t g1 = std::gcd(num_, o.den_);
    const std::int64_t g2 = std::gcd(o.num_, den_);
    return Rational(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const { return *this * o.reciprocal(); }

Rational Rational::reciprocal() const {
    if (num_ == 0)
        throw Error("reciprocal of zero");
    return Rational(den_, num_);
}

bool Rational::operator<(const Rational& o) const {
    // denominators are positive, so the sign of the cross difference decides
    return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

std::string Rational::str() const {
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

} // namespace formdim
