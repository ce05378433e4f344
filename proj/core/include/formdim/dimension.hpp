#pragma once

#include <array>
#include <string>

#include "formdim/rational.hpp"

namespace formdim {

/// Number of SI base dimensions.
inline constexpr int kNumBaseDims = 7;

/// Fixed ordering of the SI base dimensions: amount of substance, electric
/// current, length, luminous intensity, mass, temperature, time.
enum class BaseDim : int { N = 0, I = 1, L = 2, J = 3, M = 4, Th = 5, T = 6 };

/// Symbol for each base dimension, in vector order: N I L J M Th T.
const std::string& base_dim_symbol(int index);

/// Physical dimension as an exact rational exponent vector over the seven
/// SI base dimensions. The all-zero vector is the unique dimensionless
/// element; products of quantities add vectors, powers scale them.
class Dimension {
public:
    Dimension() = default;
    explicit Dimension(std::array<Rational, kNumBaseDims> exps) : exps_(std::move(exps)) {}

    static Dimension dimensionless() { return Dimension(); }
    static Dimension base(BaseDim b);

    const Rational& operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
    Rational& operator[](int i) { return exps_[static_cast<std::size_t>(i)]; }

    bool operator==(const Dimension& o) const { return exps_ == o.exps_; }
    bool operator!=(const Dimension& o) const { return !(*this == o); }

    /// Product of base-symbol powers, zero exponents omitted,
    /// e.g. "L^1 M^1 T^-2"; "1" when dimensionless. Non-integer exponents
    /// render parenthesized: "L^(3/2)".
    std::string str() const;

private:
    std::array<Rational, kNumBaseDims> exps_{};
};

/// Dimension of a product: componentwise exponent sum.
Dimension dim_mul(const Dimension& a, const Dimension& b);

/// Dimension of a rational power: each exponent scaled by r. dim_pow(a, -1)
/// realizes division.
Dimension dim_pow(const Dimension& a, const Rational& r);

/// True iff all seven exponents are zero.
bool dim_is_dimensionless(const Dimension& a);

} // namespace formdim
