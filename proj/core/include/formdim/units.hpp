#pragma once

#include <string>
#include <vector>

#include "formdim/dimension.hpp"

namespace formdim {

/// A concrete measurement scale: a dimension plus the multiplicative factor
/// converting one of this unit into coherent SI base units. Base units have
/// scale_to_base == 1 exactly.
struct Unit {
    Dimension dimension;
    double scale_to_base = 1.0;
};

/// Registry of unit symbols understood by parse_unit. Immutable after
/// construction; all lookups are pure and thread-safe.
///
/// Contents: the 7 SI base units (mol, A, m, cd, kg, K, s), the derived
/// units N, J, W, Pa, Hz, C, V, ohm, F, plus g (1e-3 kg), min, h and
/// angstrom. All 24 standard SI prefixes are accepted on any symbol except
/// kg (prefix gram instead). Matching is case-sensitive; a whole-token
/// symbol match takes precedence over prefix decomposition.
class UnitRegistry {
public:
    static const UnitRegistry& instance();

    /// Resolve a symbol token, trying the whole token first and prefix
    /// decomposition second. Throws UnitError for unknown symbols.
    Unit resolve(const std::string& symbol) const;

    /// All registered symbols (without prefixes).
    std::vector<std::string> symbols() const;

private:
    UnitRegistry();

    struct Entry {
        std::string symbol;
        Unit unit;
        bool prefixable;
    };
    std::vector<Entry> entries_;

    const Entry* find(const std::string& symbol) const;
};

/// Parse a unit expression:
///
///   unit     := term (('*'|'/') term)*
///   term     := symbol ('^' exponent)? | '(' unit ')' ('^' exponent)? | '1'
///   exponent := integer | '(' integer '/' positive-integer ')'
///
/// Whitespace is ignored; division is left-associative ("a/b/c" = a b^-1 c^-1).
Unit parse_unit(const std::string& text);

/// Named reference scale: a magnitude expressed in some unit, with the
/// derived value in coherent SI base units.
struct Quantity {
    std::string name;
    double value = 0.0;
    Unit unit;
    std::string unit_text;
    double base_value = 0.0;

    const Dimension& dimension() const { return unit.dimension; }
};

/// Build a Quantity from a value and unit text; base_value = value * scale.
Quantity make_quantity(const std::string& name, double value, const std::string& unit_text);

/// True iff the two exponent vectors are equal.
bool dims_equivalent(const Dimension& a, const Dimension& b);

} // namespace formdim
