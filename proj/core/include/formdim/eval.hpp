#pragma once

#include <map>
#include <string>
#include <vector>

#include "formdim/form_expr.hpp"

namespace formdim {

/// Dense numeric tensor of rank 0, 1 or 2 (square), used by eval_expr.
class Tensor {
public:
    Tensor() : shape_(Shape::scalar()), data_(1, 0.0) {}
    explicit Tensor(double v) : shape_(Shape::scalar()), data_(1, v) {}
    Tensor(Shape s, std::vector<double> data);

    static Tensor zeros(Shape s);
    static Tensor identity(int d);

    const Shape& shape() const { return shape_; }
    bool is_scalar() const { return shape_.rank == 0; }
    double scalar() const;

    double& operator()(int i);
    double operator()(int i) const;
    double& operator()(int i, int j);
    double operator()(int i, int j) const;

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    Shape shape_;
    std::vector<double> data_;
};

Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator*(double c, const Tensor& a);

/// Maximum relative componentwise difference, with an absolute floor for
/// entries near zero.
double max_rel_diff(const Tensor& a, const Tensor& b, double floor = 1e-12);

/// Bindings for eval_expr, keyed by terminal name. Gradient nodes are bound
/// under "grad(<terminal>)". Quantity terminals fall back to their stored
/// base value when not bound explicitly.
using Bindings = std::map<std::string, Tensor>;

/// Evaluate a measure-free expression by standard tensor algebra.
///
/// Gradient nodes are opaque: a gradient of a terminal reads its binding
/// directly, and a gradient argument that is linear in its fields is
/// evaluated by distributing the bound gradients through the linear
/// structure. Ln/Sqrt (and non-integer powers) require positive scalars.
Tensor eval_expr(const ExprPtr& e, const Bindings& bindings);

} // namespace formdim
