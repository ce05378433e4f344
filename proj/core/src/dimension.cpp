#include "formdim/dimension.hpp"

namespace formdim {

const std::string& base_dim_symbol(int index) {
    static const std::array<std::string, kNumBaseDims> symbols = {"N", "I", "L", "J",
                                                                  "M", "Th", "T"};
    return symbols.at(static_cast<std::size_t>(index));
}

Dimension Dimension::base(BaseDim b) {
    Dimension d;
    d[static_cast<int>(b)] = Rational(1);
    return d;
}

std::string Dimension::str() const {
    std::string out;
    for (int i = 0; i < kNumBaseDims; ++i) {
        const Rational& e = exps_[static_cast<std::size_t>(i)];
        if (e.is_zero())
            continue;
        if (!out.empty())
            out += ' ';
        out += base_dim_symbol(i);
        out += '^';
        if (e.is_integer())
            out += e.str();
        else
            out += "(" + e.str() + ")";
    }
    return out.empty() ? "1" : out;
}

Dimension dim_mul(const Dimension& a, const Dimension& b) {
    Dimension r;
    for (int i = 0; i < kNumBaseDims; ++i)
        r[i] = a[i] + b[i];
    return r;
}

Dimension dim_pow(const Dimension& a, const Rational& r) {
    Dimension out;
    for (int i = 0; i < kNumBaseDims; ++i)
        out[i] = a[i] * r;
    return out;
}

bool dim_is_dimensionless(const Dimension& a) {
    for (int i = 0; i < kNumBaseDims; ++i)
        if (!a[i].is_zero())
            return false;
    return true;
}

} // namespace formdim
