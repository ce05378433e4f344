#pragma once

#include <memory>
#include <string>
#include <vector>

#include "formdim/rational.hpp"
#include "formdim/units.hpp"

namespace formdim {

/// Tensor shape of an expression node: scalar, vector(d) or square matrix(d).
struct Shape {
    int rank = 0; // 0 scalar, 1 vector, 2 matrix
    int dim = 0;  // extent per axis (vectors and matrices only)

    static Shape scalar() { return {0, 0}; }
    static Shape vector(int d) { return {1, d}; }
    static Shape matrix(int d) { return {2, d}; }

    bool operator==(const Shape& o) const = default;
    std::string str() const;
};

enum class ExprKind {
    FieldTerminal,
    TestTerminal,
    QuantityTerminal,
    NumericConstant,
    GradWrapped,
    Sum,
    Product,
    Division,
    Power,
    Inner,
    Dot,
    Transpose,
    Sym,
    Trace,
    Determinant,
    Ln,
    Sqrt,
    Abs,
    Identity,
    Measure,
};

enum class MeasureKind { Cell, Facet };

class FormExpr;
using ExprPtr = std::shared_ptr<const FormExpr>;

/// Immutable node of the variational-form expression DAG. Nodes are built
/// through the free builder functions below, which infer and validate the
/// shape; invalid combinations raise ShapeError at construction.
class FormExpr {
public:
    ExprKind kind;
    std::vector<ExprPtr> children;
    Shape shape;

    std::string name;            // terminals
    double value = 0.0;          // NumericConstant
    Quantity quantity;           // QuantityTerminal
    Rational exponent;           // Power
    MeasureKind measure = MeasureKind::Cell; // Measure
    int dim = 0;                 // Identity extent / GradWrapped spatial dim
    bool transformed = false;    // set on roots returned by transform()

    FormExpr(ExprKind k, std::vector<ExprPtr> ch, Shape s)
        : kind(k), children(std::move(ch)), shape(s) {}
};

const char* kind_name(ExprKind k);

// ---------------------------------------------------------------------------
// Builders (shape-checked)
// ---------------------------------------------------------------------------

ExprPtr field(const std::string& name, Shape shape);
ExprPtr test_field(const std::string& name, Shape shape);
ExprPtr quantity_ref(const Quantity& q);
ExprPtr constant(double v);
ExprPtr grad(const ExprPtr& e, int spatial_dim);
ExprPtr sum(std::vector<ExprPtr> terms);
ExprPtr add(const ExprPtr& a, const ExprPtr& b); // flattens left Sum chains
ExprPtr sub(const ExprPtr& a, const ExprPtr& b);
ExprPtr neg(const ExprPtr& e);
ExprPtr mul(const ExprPtr& a, const ExprPtr& b);
ExprPtr mulv(std::vector<ExprPtr> factors); // left-assoc product chain
ExprPtr div(const ExprPtr& a, const ExprPtr& b);
ExprPtr pow(const ExprPtr& e, const Rational& r);
ExprPtr inner(const ExprPtr& a, const ExprPtr& b);
ExprPtr dot(const ExprPtr& a, const ExprPtr& b);
ExprPtr transpose(const ExprPtr& e);
ExprPtr sym(const ExprPtr& e);
ExprPtr trace(const ExprPtr& e);
ExprPtr determinant(const ExprPtr& e);
ExprPtr ln(const ExprPtr& e);
ExprPtr sqrt(const ExprPtr& e);
ExprPtr abs(const ExprPtr& e);
ExprPtr identity(int d);
ExprPtr dx();
ExprPtr ds();

/// General entry point: validate children shapes for `kind` and return the
/// node. The builders above all route through this.
ExprPtr build(ExprKind kind, std::vector<ExprPtr> children);

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

/// Structural equality (kinds, names, values, exponents, children).
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// True if any node of e is a field, test-field or gradient node.
bool contains_fields(const ExprPtr& e);

/// Number of Measure nodes in the DAG (counted once per distinct node path).
int count_measures(const ExprPtr& e);

/// Canonical textual form, e.g. "inner(grad(u), grad(du)) * dx". This is the
/// exact grammar accepted by parse_expression.
std::string render(const ExprPtr& e);

/// Shortest round-trip decimal form of a double ("2", "0.001", ...).
std::string format_double(double v);

} // namespace formdim
