#include "formdim/eval.hpp"

#include <cmath>

#include "formdim/errors.hpp"

namespace formdim {

namespace {

std::size_t size_of(Shape s) {
    switch (s.rank) {
    case 0: return 1;
    case 1: return static_cast<std::size_t>(s.dim);
    default: return static_cast<std::size_t>(s.dim) * static_cast<std::size_t>(s.dim);
    }
}

} // namespace

Tensor::Tensor(Shape s, std::vector<double> data) : shape_(s), data_(std::move(data)) {
    if (data_.size() != size_of(s))
        throw EvalError("tensor data size does not match shape " + s.str());
}

Tensor Tensor::zeros(Shape s) { return Tensor(s, std::vector<double>(size_of(s), 0.0)); }

Tensor Tensor::identity(int d) {
    Tensor t = zeros(Shape::matrix(d));
    for (int i = 0; i < d; ++i)
        t(i, i) = 1.0;
    return t;
}

double Tensor::scalar() const {
    if (!is_scalar())
        throw EvalError("tensor of shape " + shape_.str() + " used as a scalar");
    return data_[0];
}

double& Tensor::operator()(int i) { return data_[static_cast<std::size_t>(i)]; }
double Tensor::operator()(int i) const { return data_[static_cast<std::size_t>(i)]; }
double& Tensor::operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i * shape_.dim + j)];
}
double Tensor::operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i * shape_.dim + j)];
}

Tensor operator+(const Tensor& a, const Tensor& b) {
    if (!(a.shape() == b.shape()))
        throw EvalError("tensor addition with mismatched shapes");
    Tensor r = a;
    for (std::size_t i = 0; i < r.data().size(); ++i)
        r.data()[i] += b.data()[i];
    return r;
}

Tensor operator*(double c, const Tensor& a) {
    Tensor r = a;
    for (double& v : r.data())
        v *= c;
    return r;
}

double max_rel_diff(const Tensor& a, const Tensor& b, double floor) {
    if (!(a.shape() == b.shape()))
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        const double x = a.data()[i];
        const double y = b.data()[i];
        const double denom = std::max({std::fabs(x), std::fabs(y), floor});
        worst = std::max(worst, std::fabs(x - y) / denom);
    }
    return worst;
}

namespace {

class Evaluator {
public:
    explicit Evaluator(const Bindings& b) : bindings_(b) {}

    Tensor eval(const ExprPtr& e) {
        switch (e->kind) {
        case ExprKind::FieldTerminal:
        case ExprKind::TestTerminal:
            return lookup(e->name);
        case ExprKind::QuantityTerminal: {
            auto it = bindings_.find(e->name);
            if (it != bindings_.end())
                return it->second;
            return Tensor(e->quantity.base_value);
        }
        case ExprKind::NumericConstant:
            return Tensor(e->value);
        case ExprKind::GradWrapped:
            return eval_grad_arg(e->children[0]);
        case ExprKind::Identity:
            return Tensor::identity(e->dim);
        case ExprKind::Measure:
            throw EvalError("cannot evaluate an expression containing a measure");
        case ExprKind::Sum: {
            Tensor r = eval(e->children[0]);
            for (std::size_t i = 1; i < e->children.size(); ++i)
                r = r + eval(e->children[i]);
            return r;
        }
        case ExprKind::Product: {
            const Tensor a = eval(e->children[0]);
            const Tensor b = eval(e->children[1]);
            if (a.is_scalar())
                return a.scalar() * b;
            return b.scalar() * a;
        }
        case ExprKind::Division: {
            const Tensor a = eval(e->children[0]);
            const double d = eval(e->children[1]).scalar();
            if (d == 0.0)
                throw EvalError("division by zero");
            return (1.0 / d) * a;
        }
        case ExprKind::Power: {
            const double x = eval(e->children[0]).scalar();
            const Rational& r = e->exponent;
            if (!r.is_integer() && x < 0.0)
                throw EvalError("non-integer power of a negative scalar");
            if (x == 0.0 && r.num() < 0)
                throw EvalError("negative power of zero");
            return Tensor(std::pow(x, r.to_double()));
        }
        case ExprKind::Inner: {
            const Tensor a = eval(e->children[0]);
            const Tensor b = eval(e->children[1]);
            double s = 0.0;
            for (std::size_t i = 0; i < a.data().size(); ++i)
                s += a.data()[i] * b.data()[i];
            return Tensor(s);
        }
        case ExprKind::Dot:
            return eval_dot(eval(e->children[0]), eval(e->children[1]));
        case ExprKind::Transpose: {
            const Tensor a = eval(e->children[0]);
            const int d = a.shape().dim;
            Tensor r = Tensor::zeros(a.shape());
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    r(i, j) = a(j, i);
            return r;
        }
        case ExprKind::Sym: {
            const Tensor a = eval(e->children[0]);
            const int d = a.shape().dim;
            Tensor r = Tensor::zeros(a.shape());
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    r(i, j) = 0.5 * (a(i, j) + a(j, i));
            return r;
        }
        case ExprKind::Trace: {
            const Tensor a = eval(e->children[0]);
            double s = 0.0;
            for (int i = 0; i < a.shape().dim; ++i)
                s += a(i, i);
            return Tensor(s);
        }
        case ExprKind::Determinant:
            return Tensor(det(eval(e->children[0])));
        case ExprKind::Ln: {
            const double x = eval(e->children[0]).scalar();
            if (x <= 0.0)
                throw EvalError("ln of a non-positive scalar");
            return Tensor(std::log(x));
        }
        case ExprKind::Sqrt: {
            const double x = eval(e->children[0]).scalar();
            if (x <= 0.0)
                throw EvalError("sqrt of a non-positive scalar");
            return Tensor(std::sqrt(x));
        }
        case ExprKind::Abs:
            return Tensor(std::fabs(eval(e->children[0]).scalar()));
        }
        throw EvalError("unhandled node kind");
    }

private:
    const Bindings& bindings_;

    Tensor lookup(const std::string& key) {
        auto it = bindings_.find(key);
        if (it == bindings_.end())
            throw EvalError("missing binding for '" + key + "'");
        return it->second;
    }

    static double det(const Tensor& a) {
        const int d = a.shape().dim;
        if (d == 1)
            return a(0, 0);
        if (d == 2)
            return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        if (d == 3)
            return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                   a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                   a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        throw EvalError("determinant only implemented for extents 1..3");
    }

    static Tensor eval_dot(const Tensor& a, const Tensor& b) {
        const int d = a.shape().dim;
        if (a.shape().rank == 1 && b.shape().rank == 1) {
            double s = 0.0;
            for (int i = 0; i < d; ++i)
                s += a(i) * b(i);
            return Tensor(s);
        }
        if (a.shape().rank == 2 && b.shape().rank == 1) {
            Tensor r = Tensor::zeros(Shape::vector(d));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    r(i) += a(i, j) * b(j);
            return r;
        }
        if (a.shape().rank == 1 && b.shape().rank == 2) {
            Tensor r = Tensor::zeros(Shape::vector(d));
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < d; ++i)
                    r(j) += a(i) * b(i, j);
            return r;
        }
        Tensor r = Tensor::zeros(Shape::matrix(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    r(i, j) += a(i, k) * b(k, j);
        return r;
    }

    // A gradient argument must be linear in its fields; the bound gradient
    // tensors distribute through sums, scalar products and divisions.
    Tensor eval_grad_arg(const ExprPtr& e) {
        switch (e->kind) {
        case ExprKind::FieldTerminal:
        case ExprKind::TestTerminal:
            return lookup("grad(" + e->name + ")");
        case ExprKind::GradWrapped:
            throw EvalError("nested gradient evaluation is not supported");
        case ExprKind::Sum: {
            Tensor r = eval_grad_arg(e->children[0]);
            for (std::size_t i = 1; i < e->children.size(); ++i)
                r = r + eval_grad_arg(e->children[i]);
            return r;
        }
        case ExprKind::Product: {
            const bool lhs_fields = contains_fields(e->children[0]);
            const bool rhs_fields = contains_fields(e->children[1]);
            if (lhs_fields && rhs_fields)
                throw EvalError("cannot evaluate gradient of an expression nonlinear in its "
                                "fields: " +
                                render(e));
            if (lhs_fields)
                return eval(e->children[1]).scalar() * eval_grad_arg(e->children[0]);
            return eval(e->children[0]).scalar() * eval_grad_arg(e->children[1]);
        }
        case ExprKind::Division: {
            if (contains_fields(e->children[1]))
                throw EvalError("cannot evaluate gradient with field-dependent divisor: " +
                                render(e));
            const double d = eval(e->children[1]).scalar();
            if (d == 0.0)
                throw EvalError("division by zero");
            return (1.0 / d) * eval_grad_arg(e->children[0]);
        }
        default:
            if (!contains_fields(e)) {
                // gradient of a spatially constant expression
                throw EvalError("cannot evaluate gradient of a constant expression: " + render(e));
            }
            throw EvalError("cannot evaluate gradient of an expression nonlinear in its fields: " +
                            render(e));
        }
    }
};

} // namespace

Tensor eval_expr(const ExprPtr& e, const Bindings& bindings) { return Evaluator(bindings).eval(e); }

} // namespace formdim
