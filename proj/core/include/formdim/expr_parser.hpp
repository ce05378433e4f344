#pragma once

#include <map>
#include <string>

#include "formdim/form_expr.hpp"

namespace formdim {

/// Name resolution context for parse_expression: declared quantities and
/// fields, plus the spatial dimension used by grad().
struct SymbolTable {
    std::map<std::string, Quantity> quantities;
    std::map<std::string, Shape> fields;
    int dimension = 2;
};

/// Parse the canonical expression grammar:
///
///   infix + - * / with usual precedence, unary minus,
///   inner(a, b), dot(a, b), grad(x), div(x) [sugar for tr(grad(x))],
///   pow(x, p) / pow(x, p/q), ln(x), sqrt(x), abs(x), det(x), tr(x),
///   sym(x), transpose(x), identity(d), numbers, declared identifiers,
///   and the measures dx / ds.
///
/// Unknown identifiers raise ParseError with their location; line_offset
/// shifts reported line numbers for embedding in larger files.
ExprPtr parse_expression(const std::string& text, const SymbolTable& symbols,
                         int line_offset = 0);

} // namespace formdim
