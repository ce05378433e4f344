#include "formdim/passes.hpp"

#include <algorithm>

#include "formdim/errors.hpp"

namespace formdim {

bool FactorExponents::is_zero() const {
    return std::all_of(exponents.begin(), exponents.end(),
                       [](const Rational& r) { return r.is_zero(); });
}

FactorExponents FactorExponents::operator+(const FactorExponents& o) const {
    FactorExponents r = *this;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        r.exponents[i] += o.exponents[i];
    return r;
}

FactorExponents FactorExponents::operator-(const FactorExponents& o) const {
    FactorExponents r = *this;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        r.exponents[i] -= o.exponents[i];
    return r;
}

FactorExponents FactorExponents::scaled(const Rational& r) const {
    FactorExponents out = *this;
    for (Rational& e : out.exponents)
        e *= r;
    return out;
}

Mapping::Mapping(std::vector<Quantity> quantities, std::string length_quantity, int dimension)
    : quantities_(std::move(quantities)), length_quantity_(std::move(length_quantity)),
      dimension_(dimension) {
    if (!length_quantity_.empty())
        quantity_index(length_quantity_); // validates presence
}

int Mapping::quantity_index(const std::string& name) const {
    for (std::size_t i = 0; i < quantities_.size(); ++i)
        if (quantities_[i].name == name)
            return static_cast<int>(i);
    throw Error("quantity '" + name + "' is not in the mapping quantity list");
}

void Mapping::map_terminal(const std::string& terminal, const std::string& quantity_name,
                           ExprPtr replacement) {
    const std::size_t i = static_cast<std::size_t>(quantity_index(quantity_name));
    map_monomial(terminal, FactorExponents::unit(quantities_.size(), i), std::move(replacement));
}

void Mapping::map_identity(const std::string& terminal, ExprPtr replacement) {
    map_monomial(terminal, FactorExponents::zero(quantities_.size()), std::move(replacement));
}

void Mapping::map_monomial(const std::string& terminal, FactorExponents monomial,
                           ExprPtr replacement) {
    entries_.push_back(Entry{terminal, std::move(monomial), std::move(replacement)});
}

const Mapping::Entry* Mapping::find(const std::string& terminal) const {
    for (const Entry& e : entries_)
        if (e.terminal == terminal)
            return &e;
    return nullptr;
}

namespace {

std::vector<std::string> quantity_names(const std::vector<Quantity>& qs) {
    std::vector<std::string> names;
    names.reserve(qs.size());
    for (const Quantity& q : qs)
        names.push_back(q.name);
    return names;
}

std::string truncated_render(const ExprPtr& e, std::size_t limit = 160) {
    std::string s = render(e);
    if (s.size() > limit)
        s = s.substr(0, limit) + "...";
    return s;
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

class Transformer {
public:
    explicit Transformer(const Mapping& m) : m_(m) {}

    ExprPtr run(const ExprPtr& e) {
        ExprPtr out = visit(e);
        if (!changed_)
            return e;
        auto root = std::make_shared<FormExpr>(*out);
        root->transformed = true;
        return root;
    }

private:
    const Mapping& m_;
    bool changed_ = false;

    ExprPtr length_term() {
        if (m_.length_quantity().empty())
            throw TransformError("mapping does not designate a length quantity but the "
                                 "expression contains gradients or measures");
        const int i = m_.quantity_index(m_.length_quantity());
        return quantity_ref(m_.quantities()[static_cast<std::size_t>(i)]);
    }

    // product of q_i^e_i for the nonzero entries; nullptr for the empty monomial
    ExprPtr monomial_expr(const FactorExponents& f) {
        ExprPtr out;
        for (std::size_t i = 0; i < f.exponents.size(); ++i) {
            const Rational& e = f.exponents[i];
            if (e.is_zero())
                continue;
            ExprPtr q = quantity_ref(m_.quantities()[i]);
            if (e != Rational(1))
                q = pow(q, e);
            out = out ? mul(out, q) : q;
        }
        return out;
    }

    ExprPtr scaled_replacement(const Mapping::Entry& entry) {
        ExprPtr mono = monomial_expr(entry.monomial);
        return mono ? mul(mono, entry.replacement) : entry.replacement;
    }

    ExprPtr visit(const ExprPtr& e) {
        switch (e->kind) {
        case ExprKind::FieldTerminal:
        case ExprKind::TestTerminal: {
            const Mapping::Entry* entry = m_.find(e->name);
            if (!entry)
                throw TransformError("terminal '" + e->name + "' is not in the mapping");
            changed_ = true;
            return scaled_replacement(*entry);
        }
        case ExprKind::QuantityTerminal:
        case ExprKind::NumericConstant:
        case ExprKind::Identity:
            return e;
        case ExprKind::GradWrapped: {
            changed_ = true;
            const ExprPtr& child = e->children[0];
            if (child->kind == ExprKind::FieldTerminal || child->kind == ExprKind::TestTerminal) {
                const Mapping::Entry* entry = m_.find(child->name);
                if (!entry)
                    throw TransformError("terminal '" + child->name + "' is not in the mapping");
                // the gradient is linear: hoist the quantity monomial outside
                ExprPtr inner_grad = div(grad(entry->replacement, e->dim), length_term());
                ExprPtr mono = monomial_expr(entry->monomial);
                return mono ? mul(mono, inner_grad) : inner_grad;
            }
            return div(grad(visit(child), e->dim), length_term());
        }
        case ExprKind::Measure: {
            const int p = e->measure == MeasureKind::Cell ? m_.dimension() : m_.dimension() - 1;
            if (p == 0)
                return e;
            changed_ = true;
            ExprPtr l = length_term();
            if (p != 1)
                l = pow(l, Rational(p));
            return mul(l, e);
        }
        default: {
            std::vector<ExprPtr> ch;
            ch.reserve(e->children.size());
            bool any = false;
            for (const ExprPtr& c : e->children) {
                ExprPtr v = visit(c);
                any = any || v.get() != c.get();
                ch.push_back(std::move(v));
            }
            if (!any)
                return e;
            auto n = std::make_shared<FormExpr>(*e);
            n->children = std::move(ch);
            return n;
        }
        }
    }
};

// ---------------------------------------------------------------------------
// factorize
// ---------------------------------------------------------------------------

class Factorizer {
public:
    explicit Factorizer(const std::vector<Quantity>& qs) : qs_(qs), names_(quantity_names(qs)) {}

    FactorizedTerm run(const ExprPtr& e) {
        Result r = visit(e);
        FactorizedTerm out;
        out.factor = std::move(r.factor);
        out.residual = r.residual ? r.residual : constant(1.0);
        out.factor_value = monomial_value(out.factor.exponents, qs_);
        return out;
    }

private:
    const std::vector<Quantity>& qs_;
    std::vector<std::string> names_;

    // residual == nullptr marks a pure quantity monomial with no residual part
    struct Result {
        FactorExponents factor;
        ExprPtr residual;
    };

    std::size_t n() const { return qs_.size(); }

    int quantity_index(const std::string& name) const {
        for (std::size_t i = 0; i < qs_.size(); ++i)
            if (qs_[i].name == name)
                return static_cast<int>(i);
        return -1;
    }

    static ExprPtr or_one(const ExprPtr& residual) { return residual ? residual : constant(1.0); }

    std::string monomial_str(const FactorExponents& f) const {
        return render_monomial(f.exponents, names_);
    }

    Result visit(const ExprPtr& e) {
        switch (e->kind) {
        case ExprKind::QuantityTerminal: {
            const int i = quantity_index(e->name);
            if (i < 0)
                throw FactorizeError("quantity '" + e->name +
                                     "' is not in the factorization quantity list");
            return {FactorExponents::unit(n(), static_cast<std::size_t>(i)), nullptr};
        }
        case ExprKind::FieldTerminal:
        case ExprKind::TestTerminal:
        case ExprKind::NumericConstant:
        case ExprKind::Identity:
        case ExprKind::Measure:
            return {FactorExponents::zero(n()), e};
        case ExprKind::GradWrapped: {
            Result c = visit(e->children[0]);
            if (!c.residual)
                throw FactorizeError("gradient of a pure quantity expression: " +
                                     truncated_render(e));
            return {std::move(c.factor), grad(c.residual, e->dim)};
        }
        case ExprKind::Product: {
            Result a = visit(e->children[0]);
            Result b = visit(e->children[1]);
            ExprPtr res;
            if (a.residual && b.residual)
                res = mul(a.residual, b.residual);
            else if (a.residual)
                res = a.residual;
            else
                res = b.residual; // possibly nullptr: pure monomial product
            return {a.factor + b.factor, res};
        }
        case ExprKind::Division: {
            Result a = visit(e->children[0]);
            Result b = visit(e->children[1]);
            ExprPtr res;
            if (b.residual)
                res = div(or_one(a.residual), b.residual);
            else
                res = a.residual; // divisor fully factored away
            return {a.factor - b.factor, res};
        }
        case ExprKind::Power: {
            Result c = visit(e->children[0]);
            FactorExponents f = c.factor.scaled(e->exponent);
            if (!c.residual)
                return {std::move(f), nullptr};
            return {std::move(f), pow(c.residual, e->exponent)};
        }
        case ExprKind::Inner: {
            Result a = visit(e->children[0]);
            Result b = visit(e->children[1]);
            return {a.factor + b.factor, inner(or_one(a.residual), or_one(b.residual))};
        }
        case ExprKind::Dot: {
            Result a = visit(e->children[0]);
            Result b = visit(e->children[1]);
            return {a.factor + b.factor, dot(a.residual, b.residual)};
        }
        case ExprKind::Transpose: {
            Result c = visit(e->children[0]);
            return {std::move(c.factor), transpose(c.residual)};
        }
        case ExprKind::Sym: {
            Result c = visit(e->children[0]);
            return {std::move(c.factor), sym(c.residual)};
        }
        case ExprKind::Trace: {
            Result c = visit(e->children[0]);
            return {std::move(c.factor), trace(c.residual)};
        }
        case ExprKind::Abs: {
            Result c = visit(e->children[0]);
            return {std::move(c.factor), abs(or_one(c.residual))};
        }
        case ExprKind::Determinant: {
            const int d = e->children[0]->shape.dim;
            Result c = visit(e->children[0]);
            // det is homogeneous of degree d in a uniform matrix scaling
            return {c.factor.scaled(Rational(d)), determinant(c.residual)};
        }
        case ExprKind::Ln:
        case ExprKind::Sqrt: {
            Result c = visit(e->children[0]);
            if (!c.factor.is_zero())
                throw NonHomogeneousArgument(
                    std::string("non-homogeneous argument of ") +
                    (e->kind == ExprKind::Ln ? "ln" : "sqrt") + ": " + truncated_render(e) +
                    "\nArgument carries factor " + monomial_str(c.factor) + ".");
            ExprPtr res = or_one(c.residual);
            return {FactorExponents::zero(n()),
                    e->kind == ExprKind::Ln ? ln(res) : formdim::sqrt(res)};
        }
        case ExprKind::Sum: {
            std::vector<Result> rs;
            rs.reserve(e->children.size());
            for (const ExprPtr& c : e->children)
                rs.push_back(visit(c));
            for (std::size_t i = 1; i < rs.size(); ++i) {
                if (rs[i].factor == rs[0].factor)
                    continue;
                const Dimension da = monomial_dimension(rs[0].factor.exponents, qs_);
                const Dimension db = monomial_dimension(rs[i].factor.exponents, qs_);
                // the dimension check is the coarser one and comes first
                if (!dims_equivalent(da, db))
                    throw InconsistentDimensions(
                        "Inconsistent dimensions in Sum:\n  " + truncated_render(e) +
                        "\nDifferent dimensions: " + da.str() + " != " + db.str() + ".");
                throw InconsistentFactors("Inconsistent factors in Sum:\n  " +
                                          truncated_render(e) + "\nDifferent factors: " +
                                          monomial_str(rs[0].factor) + " != " +
                                          monomial_str(rs[i].factor) + ".");
            }
            std::vector<ExprPtr> residuals;
            residuals.reserve(rs.size());
            for (Result& r : rs)
                residuals.push_back(or_one(r.residual));
            return {rs[0].factor, sum(std::move(residuals))};
        }
        default:
            throw FactorizeError(std::string("no factorization rule for node kind ") +
                                 kind_name(e->kind));
        }
    }
};

} // namespace

ExprPtr transform(const ExprPtr& e, const Mapping& m) {
    if (m.is_identity())
        return e;
    if (e->transformed)
        throw TransformError("expression is already transformed; re-applying a non-identity "
                             "mapping is not allowed");
    return Transformer(m).run(e);
}

FactorizedTerm factorize(const ExprPtr& e, const std::vector<Quantity>& quantities) {
    return Factorizer(quantities).run(e);
}

FactorizedMap factorize_terms(const TermMap& terms, const std::vector<Quantity>& quantities,
                              const Mapping& m) {
    FactorizedMap out;
    out.reserve(terms.size());
    for (const auto& [name, expr] : terms) {
        try {
            out.emplace_back(name, factorize(transform(expr, m), quantities));
        } catch (const FactorizeError&) {
            throw;
        } catch (const Error& err) {
            throw Error("term '" + name + "': " + err.what());
        }
    }
    return out;
}

namespace {

const FactorizedTerm* find_term(const FactorizedMap& m, const std::string& name) {
    for (const auto& [n, t] : m)
        if (n == name)
            return &t;
    return nullptr;
}

} // namespace

NormalizedMap normalize(const FactorizedMap& factorized, const std::string& reference_term,
                        const std::vector<Quantity>& quantities) {
    const FactorizedTerm* ref = find_term(factorized, reference_term);
    if (!ref)
        throw NormalizeError("unknown reference term '" + reference_term + "'");

    const Dimension ref_dim = monomial_dimension(ref->factor.exponents, quantities);
    NormalizedMap out;
    out.reserve(factorized.size());
    for (const auto& [name, term] : factorized) {
        const Dimension d = monomial_dimension(term.factor.exponents, quantities);
        if (!dims_equivalent(d, ref_dim))
            throw DimensionalMismatchAcrossTerms(
                "term '" + name + "' has dimension " + d.str() +
                " but the reference term '" + reference_term + "' has dimension " +
                ref_dim.str());
        NormalizedTerm n;
        n.coefficient_exponents = term.factor - ref->factor;
        n.coefficient_value = monomial_value(n.coefficient_exponents.exponents, quantities);
        n.residual = term.residual;
        out.emplace_back(name, std::move(n));
    }
    return out;
}

std::vector<NormalizedMap>
normalize_multi(const std::vector<std::pair<FactorizedMap, std::string>>& groups,
                const std::vector<Quantity>& quantities) {
    std::vector<NormalizedMap> out;
    out.reserve(groups.size());
    for (const auto& [factorized, ref] : groups) {
        NormalizedMap n = normalize(factorized, ref, quantities);
        for (const auto& [name, term] : n) {
            const Dimension d = monomial_dimension(term.coefficient_exponents.exponents,
                                                   quantities);
            if (!dim_is_dimensionless(d))
                throw NormalizeError("normalized coefficient of term '" + name +
                                     "' is not dimensionless: " + d.str());
        }
        out.push_back(std::move(n));
    }
    return out;
}

Dimension get_dimension(const ExprPtr& e, const std::vector<Quantity>& quantities,
                        const Mapping& m) {
    const ExprPtr t = e->transformed ? e : transform(e, m);
    const FactorizedTerm f = factorize(t, quantities);
    return monomial_dimension(f.factor.exponents, quantities);
}

} // namespace formdim
