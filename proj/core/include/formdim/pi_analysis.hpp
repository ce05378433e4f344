#pragma once

#include <string>
#include <vector>

#include "formdim/units.hpp"

namespace formdim {

/// 7 x n matrix of exact rationals whose column j is the dimension vector of
/// quantity j. Row order is the SI base order (N, I, L, J, M, Th, T).
struct DimensionalMatrix {
    std::vector<std::vector<Rational>> entries; // [kNumBaseDims][n]
    std::vector<std::string> column_order;

    int cols() const { return static_cast<int>(column_order.size()); }
    const Rational& at(int row, int col) const {
        return entries[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    }
};

/// A dimensionless monomial in the quantities: an exponent vector in the
/// nullspace of the dimensional matrix, plus its numeric value computed from
/// the quantity base values.
struct PiGroup {
    std::vector<Rational> exponents;
    double value = 0.0;
};

/// Build the dimensional matrix with columns in input order.
/// Throws on duplicate quantity names.
DimensionalMatrix dimensional_matrix(const std::vector<Quantity>& quantities);

/// Reduced row echelon form of a rational matrix, in place. Returns the
/// pivot column indices. Fully deterministic: no pivoting by magnitude.
std::vector<int> rref(std::vector<std::vector<Rational>>& m, int cols);

/// Rank over the rationals.
int rank_rational(const std::vector<std::vector<Rational>>& m, int cols);

/// Nullspace basis by the reduced-row-echelon free-variable convention: one
/// basis vector per free column, with that free variable set to one and all
/// other free variables to zero. Vectors are returned exactly as constructed
/// (no integer rescaling or sign normalization), which keeps the basis
/// aligned with the classical dimensionless groups for the worked systems.
/// Basis size equals n - rank(m).
std::vector<std::vector<Rational>> nullspace_rational(std::vector<std::vector<Rational>> m,
                                                      int cols);

/// One PiGroup per nullspace basis vector of the dimensional matrix, with
/// values from the quantity base values.
std::vector<PiGroup> buckingham_pi(const std::vector<Quantity>& quantities);

/// Product of base values raised to the exponents.
double monomial_value(const std::vector<Rational>& exponents,
                      const std::vector<Quantity>& quantities);

/// Dimension of the monomial: sum of exponent-scaled quantity dimensions.
Dimension monomial_dimension(const std::vector<Rational>& exponents,
                             const std::vector<Quantity>& quantities);

/// Render an exponent vector over named quantities as a monomial string,
/// e.g. "nu/(v_ref l_ref)", "u_ref/l_ref", "1" for the empty monomial.
/// Positive exponents go to the numerator and negative ones to the
/// denominator, each in quantity order.
std::string render_monomial(const std::vector<Rational>& exponents,
                            const std::vector<std::string>& names);

} // namespace formdim
