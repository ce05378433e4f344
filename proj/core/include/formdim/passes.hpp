#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "formdim/form_expr.hpp"
#include "formdim/pi_analysis.hpp"

namespace formdim {

/// Exact exponent vector over an ordered quantity list: a pure monomial in
/// the quantities. Numeric prefactors never enter these vectors; they stay
/// in the residual expression.
struct FactorExponents {
    std::vector<Rational> exponents;

    static FactorExponents zero(std::size_t n) {
        FactorExponents f;
        f.exponents.assign(n, Rational(0));
        return f;
    }
    static FactorExponents unit(std::size_t n, std::size_t i) {
        FactorExponents f = zero(n);
        f.exponents[i] = Rational(1);
        return f;
    }

    bool is_zero() const;
    FactorExponents operator+(const FactorExponents& o) const;
    FactorExponents operator-(const FactorExponents& o) const;
    FactorExponents scaled(const Rational& r) const;
    bool operator==(const FactorExponents& o) const { return exponents == o.exponents; }
    bool operator!=(const FactorExponents& o) const { return !(*this == o); }
};

/// Dimensional transformation: maps selected terminals to quantity-scaled
/// replacements, and designates the length quantity used to rescale
/// gradients and integration measures, together with the topological
/// dimension of the domain.
class Mapping {
public:
    Mapping() = default;
    Mapping(std::vector<Quantity> quantities, std::string length_quantity, int dimension);

    /// terminal -> quantity * replacement (single quantity monomial).
    void map_terminal(const std::string& terminal, const std::string& quantity_name,
                      ExprPtr replacement);
    /// terminal -> replacement with the empty monomial (dimensionless field).
    void map_identity(const std::string& terminal, ExprPtr replacement);
    /// terminal -> general monomial * replacement.
    void map_monomial(const std::string& terminal, FactorExponents monomial, ExprPtr replacement);

    struct Entry {
        std::string terminal;
        FactorExponents monomial;
        ExprPtr replacement;
    };

    const std::vector<Entry>& entries() const { return entries_; }
    const Entry* find(const std::string& terminal) const;

    const std::vector<Quantity>& quantities() const { return quantities_; }
    const std::string& length_quantity() const { return length_quantity_; }
    int dimension() const { return dimension_; }

    /// No terminal entries and no designated length quantity.
    bool is_identity() const { return entries_.empty() && length_quantity_.empty(); }

    int quantity_index(const std::string& name) const;

private:
    std::vector<Quantity> quantities_;
    std::vector<Entry> entries_;
    std::string length_quantity_;
    int dimension_ = 0;
};

/// Result of homogeneous factorization: a pure quantity monomial, the
/// dimensionless residual expression, and the monomial's numeric value.
struct FactorizedTerm {
    FactorExponents factor;
    ExprPtr residual;
    double factor_value = 0.0;
};

/// A factorized term divided by the reference factor: the coefficient
/// exponent vector is dimensionless under the dimensional matrix.
struct NormalizedTerm {
    FactorExponents coefficient_exponents;
    double coefficient_value = 0.0;
    ExprPtr residual;
};

/// Ordered name -> integrand map; each integrand ends in exactly one measure.
using TermMap = std::vector<std::pair<std::string, ExprPtr>>;
using FactorizedMap = std::vector<std::pair<std::string, FactorizedTerm>>;
using NormalizedMap = std::vector<std::pair<std::string, NormalizedTerm>>;

/// Replace mapped terminals by explicit quantity-monomial products, divide
/// every gradient by the length quantity, and scale every cell measure by
/// l^d (facet measures by l^(d-1)). No other structural change. Raises
/// TransformError for unmapped field terminals, and for re-application of a
/// non-identity mapping to an already transformed expression.
ExprPtr transform(const ExprPtr& e, const Mapping& m);

/// Post-order homogeneous factorization of a transformed expression over the
/// ordered quantity list. Sum operands must carry identical factor vectors;
/// mismatches raise InconsistentDimensions (different dimensions under the
/// dimensional matrix) or InconsistentFactors (equal dimensions, different
/// monomials), in that order of checks. Nonlinear scalar functions (ln,
/// sqrt) require a zero-factor argument.
FactorizedTerm factorize(const ExprPtr& e, const std::vector<Quantity>& quantities);

/// transform then factorize each term independently; errors are reported
/// with the term name.
FactorizedMap factorize_terms(const TermMap& terms, const std::vector<Quantity>& quantities,
                              const Mapping& m);

class DimensionalMismatchAcrossTerms : public NormalizeError {
public:
    explicit DimensionalMismatchAcrossTerms(const std::string& msg) : NormalizeError(msg) {}
};

/// Divide every factor by the reference term's factor. All factors must be
/// dimensionally equal; the reference coefficient is the exact zero vector
/// with value exactly 1.
NormalizedMap normalize(const FactorizedMap& factorized, const std::string& reference_term,
                        const std::vector<Quantity>& quantities);

/// Per-group normalization for multiphysics systems; verifies every
/// resulting coefficient is dimensionless so the summed system is
/// consistent.
std::vector<NormalizedMap>
normalize_multi(const std::vector<std::pair<FactorizedMap, std::string>>& groups,
                const std::vector<Quantity>& quantities);

/// Physical dimension of an expression under a mapping: the dimensional
/// matrix applied to the factor of the transformed expression.
Dimension get_dimension(const ExprPtr& e, const std::vector<Quantity>& quantities,
                        const Mapping& m);

} // namespace formdim
