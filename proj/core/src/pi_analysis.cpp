#include "formdim/pi_analysis.hpp"

#include <cmath>
#include <set>

#include "formdim/errors.hpp"

namespace formdim {

DimensionalMatrix dimensional_matrix(const std::vector<Quantity>& quantities) {
    std::set<std::string> seen;
    for (const Quantity& q : quantities)
        if (!seen.insert(q.name).second)
            throw Error("duplicate quantity name '" + q.name + "'");

    DimensionalMatrix m;
    m.entries.assign(kNumBaseDims, std::vector<Rational>(quantities.size()));
    for (std::size_t j = 0; j < quantities.size(); ++j) {
        m.column_order.push_back(quantities[j].name);
        for (int i = 0; i < kNumBaseDims; ++i)
            m.entries[static_cast<std::size_t>(i)][j] = quantities[j].dimension()[i];
    }
    return m;
}

std::vector<int> rref(std::vector<std::vector<Rational>>& m, int cols) {
    const int rows = static_cast<int>(m.size());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot_row = -1;
        for (int i = r; i < rows; ++i) {
            if (!m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero()) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row < 0)
            continue;
        std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(pivot_row)]);

        const Rational inv = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].reciprocal();
        for (int j = c; j < cols; ++j)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *= inv;

        for (int i = 0; i < rows; ++i) {
            if (i == r)
                continue;
            const Rational f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (f.is_zero())
                continue;
            for (int j = c; j < cols; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank_rational(const std::vector<std::vector<Rational>>& m, int cols) {
    auto copy = m;
    return static_cast<int>(rref(copy, cols).size());
}

std::vector<std::vector<Rational>> nullspace_rational(std::vector<std::vector<Rational>> m,
                                                      int cols) {
    const std::vector<int> pivots = rref(m, cols);

    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : pivots)
        is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<std::vector<Rational>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)])
            continue;
        std::vector<Rational> v(static_cast<std::size_t>(cols));
        v[static_cast<std::size_t>(c)] = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            const int p = pivots[i];
            v[static_cast<std::size_t>(p)] = -m[i][static_cast<std::size_t>(c)];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<PiGroup> buckingham_pi(const std::vector<Quantity>& quantities) {
    const DimensionalMatrix m = dimensional_matrix(quantities);
    const auto basis = nullspace_rational(m.entries, m.cols());

    std::vector<PiGroup> groups;
    groups.reserve(basis.size());
    for (const auto& v : basis) {
        PiGroup g;
        g.exponents = v;
        g.value = monomial_value(v, quantities);
        groups.push_back(std::move(g));
    }
    return groups;
}

double monomial_value(const std::vector<Rational>& exponents,
                      const std::vector<Quantity>& quantities) {
    double value = 1.0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i].is_zero())
            continue;
        value *= std::pow(quantities[i].base_value, exponents[i].to_double());
    }
    return value;
}

Dimension monomial_dimension(const std::vector<Rational>& exponents,
                             const std::vector<Quantity>& quantities) {
    Dimension d;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i].is_zero())
            continue;
        d = dim_mul(d, dim_pow(quantities[i].dimension(), exponents[i]));
    }
    return d;
}

std::string render_monomial(const std::vector<Rational>& exponents,
                            const std::vector<std::string>& names) {
    auto render_factor = [&](std::size_t i, const Rational& e) {
        std::string s = names[i];
        if (e != Rational(1)) {
            s += '^';
            if (e.is_integer())
                s += e.str();
            else
                s += "(" + e.str() + ")";
        }
        return s;
    };

    std::string num, den;
    int den_factors = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        const Rational& e = exponents[i];
        if (e.is_zero())
            continue;
        if (Rational(0) < e) {
            if (!num.empty())
                num += ' ';
            num += render_factor(i, e);
        } else {
            if (!den.empty())
                den += ' ';
            den += render_factor(i, -e);
            ++den_factors;
        }
    }

    if (num.empty() && den.empty())
        return "1";
    if (num.empty())
        num = "1";
    if (den.empty())
        return num;
    if (den_factors > 1)
        den = "(" + den + ")";
    return num + "/" + den;
}

} // namespace formdim
