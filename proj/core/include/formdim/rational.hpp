#pragma once

#include <cstdint>
#include <string>

#include "formdim/errors.hpp"

namespace formdim {

/// Exact rational number over checked 64-bit integers.
///
/// Always stored in lowest terms with a positive denominator. Arithmetic is
/// exact; any intermediate that would overflow int64 raises OverflowError.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    Rational reciprocal() const;

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

private:
    std::int64_t num_;
    std::int64_t den_;

    void normalize();
};

} // namespace formdim
