#include "formdim/form_expr.hpp"

#include <charconv>
#include <cstring>

#include "formdim/errors.hpp"

namespace formdim {

std::string Shape::str() const {
    switch (rank) {
    case 0: return "scalar";
    case 1: return "vector(" + std::to_string(dim) + ")";
    default: return "matrix(" + std::to_string(dim) + "x" + std::to_string(dim) + ")";
    }
}

const char* kind_name(ExprKind k) {
    switch (k) {
    case ExprKind::FieldTerminal: return "Field";
    case ExprKind::TestTerminal: return "TestField";
    case ExprKind::QuantityTerminal: return "Quantity";
    case ExprKind::NumericConstant: return "Constant";
    case ExprKind::GradWrapped: return "Grad";
    case ExprKind::Sum: return "Sum";
    case ExprKind::Product: return "Product";
    case ExprKind::Division: return "Division";
    case ExprKind::Power: return "Power";
    case ExprKind::Inner: return "Inner";
    case ExprKind::Dot: return "Dot";
    case ExprKind::Transpose: return "Transpose";
    case ExprKind::Sym: return "Sym";
    case ExprKind::Trace: return "Trace";
    case ExprKind::Determinant: return "Determinant";
    case ExprKind::Ln: return "Ln";
    case ExprKind::Sqrt: return "Sqrt";
    case ExprKind::Abs: return "Abs";
    case ExprKind::Identity: return "Identity";
    case ExprKind::Measure: return "Measure";
    }
    return "?";
}

namespace {

[[noreturn]] void shape_fail(ExprKind k, const std::vector<ExprPtr>& ch, const std::string& why) {
    std::string msg = "shape mismatch in ";
    msg += kind_name(k);
    msg += "(";
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (i)
            msg += ", ";
        msg += ch[i]->shape.str();
    }
    msg += "): " + why;
    throw ShapeError(msg);
}

void require_arity(ExprKind k, const std::vector<ExprPtr>& ch, std::size_t n) {
    if (ch.size() != n)
        shape_fail(k, ch, "expected " + std::to_string(n) + " operand(s)");
}

std::shared_ptr<FormExpr> make(ExprKind k, std::vector<ExprPtr> ch, Shape s) {
    return std::make_shared<FormExpr>(k, std::move(ch), s);
}

} // namespace

ExprPtr build(ExprKind kind, std::vector<ExprPtr> ch) {
    switch (kind) {
    case ExprKind::Sum: {
        if (ch.size() < 2)
            shape_fail(kind, ch, "expected at least 2 operands");
        for (const auto& c : ch)
            if (!(c->shape == ch[0]->shape))
                shape_fail(kind, ch, "operands must have equal shapes");
        return make(kind, std::move(ch), ch[0]->shape);
    }
    case ExprKind::Product: {
        require_arity(kind, ch, 2);
        const bool a_scalar = ch[0]->shape.rank == 0;
        const bool b_scalar = ch[1]->shape.rank == 0;
        if (!a_scalar && !b_scalar)
            shape_fail(kind, ch, "at least one operand must be scalar");
        Shape s = a_scalar ? ch[1]->shape : ch[0]->shape;
        return make(kind, std::move(ch), s);
    }
    case ExprKind::Division: {
        require_arity(kind, ch, 2);
        if (ch[1]->shape.rank != 0)
            shape_fail(kind, ch, "divisor must be scalar");
        Shape s = ch[0]->shape;
        return make(kind, std::move(ch), s);
    }
    case ExprKind::Inner: {
        require_arity(kind, ch, 2);
        if (!(ch[0]->shape == ch[1]->shape))
            shape_fail(kind, ch, "operands must have equal shapes");
        return make(kind, std::move(ch), Shape::scalar());
    }
    case ExprKind::Dot: {
        require_arity(kind, ch, 2);
        const Shape& a = ch[0]->shape;
        const Shape& b = ch[1]->shape;
        if (a.rank == 0 || b.rank == 0)
            shape_fail(kind, ch, "operands must be vectors or matrices");
        if (a.dim != b.dim)
            shape_fail(kind, ch, "operand extents differ");
        Shape s;
        if (a.rank == 1 && b.rank == 1)
            s = Shape::scalar();
        else if (a.rank == 2 && b.rank == 1)
            s = Shape::vector(a.dim);
        else if (a.rank == 1 && b.rank == 2)
            s = Shape::vector(a.dim);
        else
            s = Shape::matrix(a.dim);
        return make(kind, std::move(ch), s);
    }
    case ExprKind::Transpose:
    case ExprKind::Sym: {
        require_arity(kind, ch, 1);
        if (ch[0]->shape.rank != 2)
            shape_fail(kind, ch, "operand must be a square matrix");
        Shape s = ch[0]->shape;
        return make(kind, std::move(ch), s);
    }
    case ExprKind::Trace:
    case ExprKind::Determinant: {
        require_arity(kind, ch, 1);
        if (ch[0]->shape.rank != 2)
            shape_fail(kind, ch, "operand must be a square matrix");
        return make(kind, std::move(ch), Shape::scalar());
    }
    case ExprKind::Ln:
    case ExprKind::Sqrt:
    case ExprKind::Abs: {
        require_arity(kind, ch, 1);
        if (ch[0]->shape.rank != 0)
            shape_fail(kind, ch, "operand must be scalar");
        return make(kind, std::move(ch), Shape::scalar());
    }
    default:
        throw Error(std::string("build() does not construct ") + kind_name(kind) +
                    " nodes; use the dedicated builder");
    }
}

ExprPtr field(const std::string& name, Shape shape) {
    auto n = make(ExprKind::FieldTerminal, {}, shape);
    n->name = name;
    return n;
}

ExprPtr test_field(const std::string& name, Shape shape) {
    auto n = make(ExprKind::TestTerminal, {}, shape);
    n->name = name;
    return n;
}

ExprPtr quantity_ref(const Quantity& q) {
    auto n = make(ExprKind::QuantityTerminal, {}, Shape::scalar());
    n->name = q.name;
    n->quantity = q;
    return n;
}

ExprPtr constant(double v) {
    auto n = make(ExprKind::NumericConstant, {}, Shape::scalar());
    n->value = v;
    return n;
}

ExprPtr grad(const ExprPtr& e, int spatial_dim) {
    Shape s;
    if (e->shape.rank == 0)
        s = Shape::vector(spatial_dim);
    else if (e->shape.rank == 1 && e->shape.dim == spatial_dim)
        s = Shape::matrix(spatial_dim);
    else
        shape_fail(ExprKind::GradWrapped, {e},
                   "operand must be scalar or vector(" + std::to_string(spatial_dim) + ")");
    auto n = make(ExprKind::GradWrapped, {e}, s);
    n->dim = spatial_dim;
    return n;
}

ExprPtr sum(std::vector<ExprPtr> terms) { return build(ExprKind::Sum, std::move(terms)); }

ExprPtr add(const ExprPtr& a, const ExprPtr& b) {
    std::vector<ExprPtr> ch;
    if (a->kind == ExprKind::Sum)
        ch = a->children;
    else
        ch.push_back(a);
    ch.push_back(b);
    return sum(std::move(ch));
}

ExprPtr neg(const ExprPtr& e) {
    if (e->kind == ExprKind::NumericConstant)
        return constant(-e->value);
    return mul(constant(-1.0), e);
}

ExprPtr sub(const ExprPtr& a, const ExprPtr& b) { return add(a, neg(b)); }

ExprPtr mul(const ExprPtr& a, const ExprPtr& b) { return build(ExprKind::Product, {a, b}); }

ExprPtr mulv(std::vector<ExprPtr> factors) {
    if (factors.empty())
        throw Error("mulv() on an empty factor list");
    ExprPtr e = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i)
        e = mul(e, factors[i]);
    return e;
}

ExprPtr div(const ExprPtr& a, const ExprPtr& b) { return build(ExprKind::Division, {a, b}); }

ExprPtr pow(const ExprPtr& e, const Rational& r) {
    if (e->shape.rank != 0)
        shape_fail(ExprKind::Power, {e}, "operand must be scalar");
    auto n = make(ExprKind::Power, {e}, Shape::scalar());
    n->exponent = r;
    return n;
}

ExprPtr inner(const ExprPtr& a, const ExprPtr& b) { return build(ExprKind::Inner, {a, b}); }
ExprPtr dot(const ExprPtr& a, const ExprPtr& b) { return build(ExprKind::Dot, {a, b}); }
ExprPtr transpose(const ExprPtr& e) { return build(ExprKind::Transpose, {e}); }
ExprPtr sym(const ExprPtr& e) { return build(ExprKind::Sym, {e}); }
ExprPtr trace(const ExprPtr& e) { return build(ExprKind::Trace, {e}); }
ExprPtr determinant(const ExprPtr& e) { return build(ExprKind::Determinant, {e}); }
ExprPtr ln(const ExprPtr& e) { return build(ExprKind::Ln, {e}); }
ExprPtr sqrt(const ExprPtr& e) { return build(ExprKind::Sqrt, {e}); }
ExprPtr abs(const ExprPtr& e) { return build(ExprKind::Abs, {e}); }

ExprPtr identity(int d) {
    if (d < 1)
        throw ShapeError("identity extent must be positive");
    auto n = make(ExprKind::Identity, {}, Shape::matrix(d));
    n->dim = d;
    return n;
}

namespace {
ExprPtr measure(MeasureKind k) {
    auto n = make(ExprKind::Measure, {}, Shape::scalar());
    n->measure = k;
    return n;
}
} // namespace

ExprPtr dx() { return measure(MeasureKind::Cell); }
ExprPtr ds() { return measure(MeasureKind::Facet); }

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get())
        return true;
    if (a->kind != b->kind || !(a->shape == b->shape))
        return false;
    if (a->name != b->name)
        return false;
    if (a->kind == ExprKind::NumericConstant && a->value != b->value)
        return false;
    if (a->kind == ExprKind::Power && a->exponent != b->exponent)
        return false;
    if (a->kind == ExprKind::Measure && a->measure != b->measure)
        return false;
    if (a->dim != b->dim)
        return false;
    if (a->children.size() != b->children.size())
        return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!expr_equal(a->children[i], b->children[i]))
            return false;
    return true;
}

bool contains_fields(const ExprPtr& e) {
    if (e->kind == ExprKind::FieldTerminal || e->kind == ExprKind::TestTerminal ||
        e->kind == ExprKind::GradWrapped)
        return true;
    for (const auto& c : e->children)
        if (contains_fields(c))
            return true;
    return false;
}

int count_measures(const ExprPtr& e) {
    int n = e->kind == ExprKind::Measure ? 1 : 0;
    for (const auto& c : e->children)
        n += count_measures(c);
    return n;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

// Precedence levels used by the renderer: 1 sum, 2 product/division,
// 3 unary minus, 4 atoms. Matches parse_expression.
int precedence(const ExprPtr& e) {
    switch (e->kind) {
    case ExprKind::Sum: return 1;
    case ExprKind::Product:
        // unary minus sugar
        if (e->children[0]->kind == ExprKind::NumericConstant && e->children[0]->value == -1.0)
            return 3;
        return 2;
    case ExprKind::Division: return 2;
    case ExprKind::NumericConstant: return e->value < 0 ? 3 : 4;
    default: return 4;
    }
}

std::string render_node(const ExprPtr& e);

std::string render_child(const ExprPtr& c, int min_prec) {
    if (precedence(c) < min_prec)
        return "(" + render_node(c) + ")";
    return render_node(c);
}

bool is_neg_one(const ExprPtr& e) {
    return e->kind == ExprKind::NumericConstant && e->value == -1.0;
}

std::string render_node(const ExprPtr& e) {
    switch (e->kind) {
    case ExprKind::FieldTerminal:
    case ExprKind::TestTerminal:
    case ExprKind::QuantityTerminal:
        return e->name;
    case ExprKind::NumericConstant:
        return format_double(e->value);
    case ExprKind::GradWrapped:
        return "grad(" + render_node(e->children[0]) + ")";
    case ExprKind::Sum: {
        std::string out = render_child(e->children[0], 2);
        for (std::size_t i = 1; i < e->children.size(); ++i) {
            const ExprPtr& c = e->children[i];
            if (c->kind == ExprKind::Product && is_neg_one(c->children[0])) {
                out += " - " + render_child(c->children[1], 2);
            } else if (c->kind == ExprKind::NumericConstant && c->value < 0) {
                out += " - " + format_double(-c->value);
            } else {
                out += " + " + render_child(c, 2);
            }
        }
        return out;
    }
    case ExprKind::Product: {
        if (is_neg_one(e->children[0])) {
            if (e->children[1]->kind == ExprKind::NumericConstant)
                return "-(" + render_node(e->children[1]) + ")";
            return "-" + render_child(e->children[1], 4);
        }
        return render_child(e->children[0], 2) + " * " + render_child(e->children[1], 3);
    }
    case ExprKind::Division:
        return render_child(e->children[0], 2) + " / " + render_child(e->children[1], 3);
    case ExprKind::Power:
        return "pow(" + render_node(e->children[0]) + ", " + e->exponent.str() + ")";
    case ExprKind::Inner:
        return "inner(" + render_node(e->children[0]) + ", " + render_node(e->children[1]) + ")";
    case ExprKind::Dot:
        return "dot(" + render_node(e->children[0]) + ", " + render_node(e->children[1]) + ")";
    case ExprKind::Transpose:
        return "transpose(" + render_node(e->children[0]) + ")";
    case ExprKind::Sym:
        return "sym(" + render_node(e->children[0]) + ")";
    case ExprKind::Trace:
        return "tr(" + render_node(e->children[0]) + ")";
    case ExprKind::Determinant:
        return "det(" + render_node(e->children[0]) + ")";
    case ExprKind::Ln:
        return "ln(" + render_node(e->children[0]) + ")";
    case ExprKind::Sqrt:
        return "sqrt(" + render_node(e->children[0]) + ")";
    case ExprKind::Abs:
        return "abs(" + render_node(e->children[0]) + ")";
    case ExprKind::Identity:
        return "identity(" + std::to_string(e->dim) + ")";
    case ExprKind::Measure:
        return e->measure == MeasureKind::Cell ? "dx" : "ds";
    }
    return "?";
}

} // namespace

std::string render(const ExprPtr& e) { return render_node(e); }

} // namespace formdim
