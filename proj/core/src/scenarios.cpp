#include "formdim/scenarios.hpp"

#include <cmath>

#include "formdim/errors.hpp"

namespace formdim {

const Quantity& Scenario::quantity(const std::string& qname) const {
    for (const Quantity& q : quantities)
        if (q.name == qname)
            return q;
    throw Error("scenario '" + name + "' has no quantity '" + qname + "'");
}

Shape Scenario::field_shape(const std::string& fname) const {
    for (const FieldDecl& f : fields)
        if (f.name == fname)
            return f.shape;
    throw Error("scenario '" + name + "' has no field '" + fname + "'");
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Incompressible flow fixture (d = 2)
// ---------------------------------------------------------------------------

Scenario make_navier_stokes() {
    Scenario s;
    s.name = "navier_stokes";
    s.dimension = 2;
    s.quantities = {
        make_quantity("v_ref", 1.0, "m/s"),
        make_quantity("l_ref", 1.0, "m"),
        make_quantity("rho", 5000.0, "kg/m^3"),
        make_quantity("nu", 1000.0, "mm^2/s"),
        make_quantity("g_ref", 10.0, "m/s^2"),
        make_quantity("p_ref", 5000.0, "Pa"),
        make_quantity("t_ref", 1.0 / 60.0, "min"),
    };

    const Shape vec = Shape::vector(2);
    s.fields = {
        {"v", vec}, {"v0", vec}, {"p", Shape::scalar()},
        {"dv", vec}, {"dp", Shape::scalar()}, {"b", vec},
    };

    ExprPtr v = field("v", vec);
    ExprPtr v0 = field("v0", vec);
    ExprPtr p = field("p", Shape::scalar());
    ExprPtr dv = field("dv", vec);
    ExprPtr dp = field("dp", Shape::scalar());
    ExprPtr b = field("b", vec);

    s.mapping = Mapping(s.quantities, "l_ref", 2);
    s.mapping.map_terminal("v", "v_ref", v);
    s.mapping.map_terminal("v0", "v_ref", v0);
    s.mapping.map_terminal("p", "p_ref", p);
    s.mapping.map_terminal("dv", "v_ref", dv);
    s.mapping.map_terminal("dp", "p_ref", dp);
    s.mapping.map_identity("b", b);

    ExprPtr rho = quantity_ref(s.quantity("rho"));
    ExprPtr nu = quantity_ref(s.quantity("nu"));
    ExprPtr g_ref = quantity_ref(s.quantity("g_ref"));
    ExprPtr t_ref = quantity_ref(s.quantity("t_ref"));

    auto D = [&](const ExprPtr& x) { return sym(grad(x, 2)); };
    auto div_of = [&](const ExprPtr& x) { return trace(grad(x, 2)); };

    // the time derivative is discretized by hand; the step fraction stays a
    // pure number so t_ref alone carries the unit
    ExprPtr dt = constant(0.1);

    TermGroup g;
    g.name = "main";
    g.reference = "convection";
    g.terms = {
        {"unsteady", mul(inner(dv, mul(rho, div(sub(v, v0), mul(t_ref, dt)))), dx())},
        {"convection", mul(inner(dv, mul(rho, dot(v, grad(v, 2)))), dx())},
        {"viscous", mul(inner(D(dv), mulv({constant(2.0), rho, nu, D(v)})), dx())},
        {"incompressibility", mul(inner(dp, div_of(v)), dx())},
        {"pressure", mul(neg(inner(div_of(dv), p)), dx())},
        {"force", mul(neg(inner(dv, mulv({rho, g_ref, b}))), dx())},
    };
    s.groups = {g};

    s.expected.pi_values = {0.001, 10.0, 1.0, 1.0};
    s.expected.reference_factor_values = {{"main", 5000.0}};
    s.expected.coefficient_values = {
        {"unsteady", 1.0},  {"convection", 1.0}, {"viscous", 0.001},
        {"incompressibility", 1.0}, {"pressure", 1.0}, {"force", 10.0},
    };
    return s;
}

// ---------------------------------------------------------------------------
// Hyperelastic fixture (d = 3)
// ---------------------------------------------------------------------------

std::vector<Quantity> neo_hooke_quantities() {
    const double E = 2e9;
    const double poisson = 0.4;
    const double mu = E / (2.0 * (1.0 + poisson));
    const double lambda = E * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
    const double kappa = lambda + 2.0 / 3.0 * mu;
    return {
        make_quantity("mu", mu, "Pa"),
        make_quantity("kappa", kappa, "Pa"),
        make_quantity("l_ref", 1.0, "mm"),
        make_quantity("tau_ref", 100.0, "kPa"),
        make_quantity("u_ref", 0.001, "mm"),
    };
}

Scenario neo_hooke_base() {
    Scenario s;
    s.name = "neo_hooke";
    s.dimension = 3;
    s.quantities = neo_hooke_quantities();

    const Shape vec = Shape::vector(3);
    s.fields = {{"u", vec}, {"t", vec}};

    ExprPtr u = field("u", vec);
    ExprPtr t = field("t", vec);

    s.mapping = Mapping(s.quantities, "l_ref", 3);
    s.mapping.map_terminal("u", "u_ref", u);
    s.mapping.map_terminal("t", "tau_ref", t);
    return s;
}

Scenario make_neo_hooke() {
    Scenario s = neo_hooke_base();

    ExprPtr mu = quantity_ref(s.quantity("mu"));
    ExprPtr kappa = quantity_ref(s.quantity("kappa"));
    ExprPtr u = field("u", Shape::vector(3));
    ExprPtr t = field("t", Shape::vector(3));

    ExprPtr e1 = sym(grad(u, 3));
    ExprPtr e2 = mul(constant(0.5), dot(transpose(grad(u, 3)), grad(u, 3)));
    ExprPtr tr_e1 = trace(e1);
    ExprPtr e1_sq = dot(e1, e1);
    ExprPtr tr_e1_sq = trace(e1_sq);
    ExprPtr tr_e1_cu = trace(dot(e1_sq, e1));

    TermGroup g;
    g.name = "energy";
    g.reference = "bulk_2";
    g.terms = {
        {"shear_2", mul(mul(mu, tr_e1_sq), dx())},
        {"bulk_2", mul(mul(div(kappa, constant(2.0)), pow(tr_e1, Rational(2))), dx())},
        {"shear_3",
         mul(mul(mu, sub(mul(constant(2.0), inner(e1, e2)),
                         mul(constant(4.0 / 3.0), tr_e1_cu))),
             dx())},
        {"bulk_3",
         mul(mul(kappa, add(add(mul(tr_e1, trace(e2)),
                                mul(constant(0.5), pow(tr_e1, Rational(3)))),
                            neg(mul(tr_e1, tr_e1_sq)))),
             dx())},
        {"force", mul(inner(t, u), ds())},
    };
    s.groups = {g};

    s.expected.pi_values = {3.3333333333333335e9 / 7.142857142857143e8, 1.4e-4, 1e-3};
    s.expected.reference_factor_values = {{"energy", 3.333333333333333e-6}};
    s.expected.coefficient_values = {
        {"shear_2", 0.2143}, {"bulk_2", 1.0}, {"shear_3", 2.143e-4},
        {"bulk_3", 0.001},   {"force", 0.03},
    };
    return s;
}

// ---------------------------------------------------------------------------
// Coupled ion transport / potential fixture (d = 1)
// ---------------------------------------------------------------------------

struct PnpSpecies {
    double z;
    double radius_factor;    // a_i = radius_factor * l_ref
    double diffusion_factor; // D_i = diffusion_factor * D_ref
    double c0;               // initial concentration (pure number)
};

const std::array<PnpSpecies, 4> kPnpSpecies = {{
    {-2.0, 6.0, 3.0, 1.0},
    {2.0, 8.0, 3.0, 1.0},
    {1.0, 4.0, 3.0, 1.0},
    {1.0, 3.0, 5.0, 1.0},
}};

constexpr double kPnpEpsR = 78.54;

Scenario make_pnp() {
    Scenario s;
    s.name = "pnp";
    s.dimension = 1;
    s.quantities = {
        make_quantity("c_ref", 50.0, "mol/m^3"),
        make_quantity("phi_ref", 1.0, "V"),
        make_quantity("D_ref", 1e-10, "m^2/s"),
        make_quantity("eps0", 8.854e-12, "F/m"),
        make_quantity("F", 9.649e4, "C/mol"),
        make_quantity("R", 8.314, "J/(K*mol)"),
        make_quantity("T", 300.0, "K"),
        make_quantity("l_ref", 1.0, "angstrom"),
        make_quantity("e0", 1.602e-19, "C"),
    };

    const Shape sc = Shape::scalar();
    s.fields = {{"c1", sc}, {"c2", sc}, {"c3", sc}, {"c4", sc},
                {"dc1", sc}, {"dc2", sc}, {"dc3", sc}, {"dc4", sc},
                {"phi", sc}, {"dphi", sc}, {"w", sc}};

    std::array<ExprPtr, 4> c, dc;
    for (int i = 0; i < 4; ++i) {
        c[static_cast<std::size_t>(i)] = field("c" + std::to_string(i + 1), sc);
        dc[static_cast<std::size_t>(i)] = field("dc" + std::to_string(i + 1), sc);
    }
    ExprPtr phi = field("phi", sc);
    ExprPtr dphi = field("dphi", sc);
    ExprPtr w = field("w", sc);

    s.mapping = Mapping(s.quantities, "l_ref", 1);
    for (int i = 0; i < 4; ++i) {
        s.mapping.map_terminal("c" + std::to_string(i + 1), "c_ref", c[static_cast<std::size_t>(i)]);
        s.mapping.map_terminal("dc" + std::to_string(i + 1), "c_ref", dc[static_cast<std::size_t>(i)]);
    }
    s.mapping.map_terminal("phi", "phi_ref", phi);
    s.mapping.map_terminal("dphi", "phi_ref", dphi);

    // the fixed charge is expressed through the reference concentration and
    // the initial concentrations so the electroneutrality sum and the ionic
    // strength stay homogeneous in c_ref
    double w0 = 0.0;
    for (const PnpSpecies& sp : kPnpSpecies)
        w0 += sp.c0 * sp.z;
    s.mapping.map_monomial("w", FactorExponents::unit(s.quantities.size(), 0), constant(w0));

    ExprPtr D_ref = quantity_ref(s.quantity("D_ref"));
    ExprPtr eps0 = quantity_ref(s.quantity("eps0"));
    ExprPtr faraday = quantity_ref(s.quantity("F"));
    ExprPtr gas_r = quantity_ref(s.quantity("R"));
    ExprPtr temp = quantity_ref(s.quantity("T"));
    ExprPtr l_ref = quantity_ref(s.quantity("l_ref"));
    ExprPtr e0 = quantity_ref(s.quantity("e0"));

    auto gr = [&](const ExprPtr& x) { return grad(x, 1); };

    // ionic strength I = 1/2 sum_i (z_i^2 c_i + w)
    std::vector<ExprPtr> strength_terms;
    for (int i = 0; i < 4; ++i) {
        const PnpSpecies& sp = kPnpSpecies[static_cast<std::size_t>(i)];
        strength_terms.push_back(
            add(mul(constant(sp.z * sp.z), c[static_cast<std::size_t>(i)]), w));
    }
    ExprPtr ionic_strength = mul(constant(0.5), sum(strength_terms));

    // monomial parts of the activity-model constants; the temperature- and
    // permittivity-independent numeric prefactors stay in the residuals
    ExprPtr ert = mulv({eps0, gas_r, temp});
    ExprPtr a_monomial = div(mul(pow(faraday, Rational(2)), e0), pow(ert, Rational(3, 2)));
    ExprPtr b_monomial = div(faraday, pow(ert, Rational(1, 2)));

    const double a_prefactor = std::sqrt(2.0) / (8.0 * kPi * std::pow(kPnpEpsR, 1.5));
    const double b_prefactor = std::sqrt(2.0 / kPnpEpsR);

    TermGroup poisson;
    poisson.name = "poisson";
    poisson.reference = "potential";
    {
        std::vector<ExprPtr> charge;
        for (int i = 0; i < 4; ++i)
            charge.push_back(mul(constant(kPnpSpecies[static_cast<std::size_t>(i)].z),
                                 c[static_cast<std::size_t>(i)]));
        charge.push_back(w);
        poisson.terms = {
            {"potential", mul(inner(mulv({eps0, constant(kPnpEpsR), gr(phi)}), gr(dphi)), dx())},
            {"electroneutrality", mul(neg(inner(mul(faraday, sum(charge)), dphi)), dx())},
        };
    }

    TermGroup np;
    np.name = "nernst_planck";
    np.reference = "diffusion";
    {
        std::vector<ExprPtr> diffusion, convection, debye0, debye1;
        for (int i = 0; i < 4; ++i) {
            const PnpSpecies& sp = kPnpSpecies[static_cast<std::size_t>(i)];
            const auto ci = c[static_cast<std::size_t>(i)];
            const auto dci = dc[static_cast<std::size_t>(i)];

            diffusion.push_back(
                mulv({constant(sp.diffusion_factor), D_ref, inner(gr(ci), gr(dci))}));

            convection.push_back(mulv({constant(sp.z), div(faraday, mul(gas_r, temp)),
                                       constant(sp.diffusion_factor), D_ref, ci,
                                       inner(gr(phi), gr(dci))}));

            ExprPtr beta0 = mulv({constant(-a_prefactor * sp.z * sp.z), a_monomial,
                                  pow(ionic_strength, Rational(1, 2))});
            debye0.push_back(mulv({constant(sp.diffusion_factor), D_ref, ci,
                                   inner(gr(beta0), gr(dci))}));

            ExprPtr beta1 = mulv({constant(a_prefactor * b_prefactor * sp.z * sp.z), a_monomial,
                                  b_monomial, mul(constant(sp.radius_factor), l_ref),
                                  ionic_strength});
            debye1.push_back(mulv({constant(sp.diffusion_factor), D_ref, ci,
                                   inner(gr(beta1), gr(dci))}));
        }
        np.terms = {
            {"diffusion", mul(sum(diffusion), dx())},
            {"convection", mul(sum(convection), dx())},
            {"debye_0th", mul(sum(debye0), dx())},
            {"debye_1st", mul(sum(debye1), dx())},
        };
    }

    s.groups = {poisson, np};

    s.expected.pi_values = {0.025849, 0.073815, 13.357};
    s.expected.reference_factor_values = {{"poisson", 0.08854}, {"nernst_planck", 2500.0}};
    s.expected.coefficient_values = {
        {"potential", 1.0},  {"electroneutrality", 0.005449},
        {"diffusion", 1.0},  {"convection", 38.68},
        {"debye_0th", 3213.0}, {"debye_1st", 1475.0},
    };
    return s;
}

} // namespace

Scenario builtin_scenario(const std::string& name) {
    if (name == "navier_stokes")
        return make_navier_stokes();
    if (name == "neo_hooke")
        return make_neo_hooke();
    if (name == "pnp")
        return make_pnp();
    throw Error("unknown scenario '" + name + "'");
}

std::vector<std::string> builtin_scenario_names() {
    return {"navier_stokes", "neo_hooke", "pnp"};
}

Scenario neo_hooke_gradient_scenario() {
    Scenario s = neo_hooke_base();
    s.name = "neo_hooke_f";

    ExprPtr mu = quantity_ref(s.quantity("mu"));
    ExprPtr kappa = quantity_ref(s.quantity("kappa"));
    ExprPtr u = field("u", Shape::vector(3));
    ExprPtr t = field("t", Shape::vector(3));

    ExprPtr f = add(identity(3), grad(u, 3));
    ExprPtr cauchy_green = dot(transpose(f), f);
    ExprPtr jacobian = formdim::sqrt(determinant(cauchy_green));
    ExprPtr w_shear = mul(div(mu, constant(2.0)),
                          sub(sub(trace(cauchy_green), constant(3.0)),
                              mul(constant(2.0), ln(jacobian))));
    ExprPtr w_bulk = mul(div(kappa, constant(2.0)),
                         pow(sub(jacobian, constant(1.0)), Rational(2)));

    TermGroup g;
    g.name = "energy";
    g.reference = "shear";
    g.terms = {
        {"shear", mul(w_shear, dx())},
        {"bulk", mul(w_bulk, dx())},
        {"force", mul(inner(t, u), ds())},
    };
    s.groups = {g};
    return s;
}

ExprPtr pnp_unexpanded_activity_term(const Scenario& pnp) {
    const PnpSpecies& sp = kPnpSpecies[0];
    ExprPtr c1 = field("c1", Shape::scalar());
    ExprPtr dc1 = field("dc1", Shape::scalar());
    ExprPtr w = field("w", Shape::scalar());

    ExprPtr D_ref = quantity_ref(pnp.quantity("D_ref"));
    ExprPtr eps0 = quantity_ref(pnp.quantity("eps0"));
    ExprPtr faraday = quantity_ref(pnp.quantity("F"));
    ExprPtr gas_r = quantity_ref(pnp.quantity("R"));
    ExprPtr temp = quantity_ref(pnp.quantity("T"));
    ExprPtr l_ref = quantity_ref(pnp.quantity("l_ref"));
    ExprPtr e0 = quantity_ref(pnp.quantity("e0"));

    std::vector<ExprPtr> strength_terms;
    for (int i = 0; i < 4; ++i) {
        const PnpSpecies& spi = kPnpSpecies[static_cast<std::size_t>(i)];
        strength_terms.push_back(
            add(mul(constant(spi.z * spi.z), field("c" + std::to_string(i + 1), Shape::scalar())),
                w));
    }
    ExprPtr ionic_strength = mul(constant(0.5), sum(strength_terms));
    ExprPtr sqrt_strength = pow(ionic_strength, Rational(1, 2));

    ExprPtr ert = mulv({eps0, gas_r, temp});
    ExprPtr a_monomial = div(mul(pow(faraday, Rational(2)), e0), pow(ert, Rational(3, 2)));
    ExprPtr b_monomial = div(faraday, pow(ert, Rational(1, 2)));

    const double a_prefactor = std::sqrt(2.0) / (8.0 * kPi * std::pow(kPnpEpsR, 1.5));
    const double b_prefactor = std::sqrt(2.0 / kPnpEpsR);

    ExprPtr numerator = mulv({constant(-a_prefactor * sp.z * sp.z), a_monomial, sqrt_strength});
    ExprPtr denominator =
        add(constant(1.0), mulv({constant(b_prefactor), b_monomial,
                                 mul(constant(sp.radius_factor), l_ref), sqrt_strength}));
    ExprPtr ln_gamma = div(numerator, denominator);

    return mul(mulv({constant(sp.diffusion_factor), D_ref, c1,
                     inner(grad(ln_gamma, 1), grad(dc1, 1))}),
               dx());
}

bool scenario_equal(const Scenario& a, const Scenario& b) {
    if (a.name != b.name || a.dimension != b.dimension)
        return false;
    if (a.quantities.size() != b.quantities.size())
        return false;
    for (std::size_t i = 0; i < a.quantities.size(); ++i) {
        const Quantity& qa = a.quantities[i];
        const Quantity& qb = b.quantities[i];
        if (qa.name != qb.name || qa.value != qb.value || qa.base_value != qb.base_value ||
            !dims_equivalent(qa.dimension(), qb.dimension()))
            return false;
    }
    if (a.fields.size() != b.fields.size())
        return false;
    for (std::size_t i = 0; i < a.fields.size(); ++i)
        if (a.fields[i].name != b.fields[i].name || !(a.fields[i].shape == b.fields[i].shape))
            return false;
    if (a.mapping.length_quantity() != b.mapping.length_quantity() ||
        a.mapping.dimension() != b.mapping.dimension())
        return false;
    if (a.mapping.entries().size() != b.mapping.entries().size())
        return false;
    for (std::size_t i = 0; i < a.mapping.entries().size(); ++i) {
        const auto& ea = a.mapping.entries()[i];
        const auto& eb = b.mapping.entries()[i];
        if (ea.terminal != eb.terminal || ea.monomial != eb.monomial ||
            !expr_equal(ea.replacement, eb.replacement))
            return false;
    }
    if (a.groups.size() != b.groups.size())
        return false;
    for (std::size_t i = 0; i < a.groups.size(); ++i) {
        const TermGroup& ga = a.groups[i];
        const TermGroup& gb = b.groups[i];
        if (ga.name != gb.name || ga.reference != gb.reference ||
            ga.terms.size() != gb.terms.size())
            return false;
        for (std::size_t j = 0; j < ga.terms.size(); ++j)
            if (ga.terms[j].first != gb.terms[j].first ||
                !expr_equal(ga.terms[j].second, gb.terms[j].second))
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Hyperelastic expansion numerics
// ---------------------------------------------------------------------------

namespace {

Mat3 matmul3(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                c[i][j] += a[i][k] * b[k][j];
    return c;
}

Mat3 transpose3(const Mat3& a) {
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t[i][j] = a[j][i];
    return t;
}

double trace3(const Mat3& a) { return a[0][0] + a[1][1] + a[2][2]; }

double det3(const Mat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double ddot3(const Mat3& a, const Mat3& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s += a[i][j] * b[i][j];
    return s;
}

} // namespace

double neo_hooke_W_full(const StrainState& s) {
    Mat3 f{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            f[i][j] = (i == j ? 1.0 : 0.0) + s.pi3 * s.gradu[i][j];
    if (det3(f) <= 0.0)
        throw Error("non-admissible deformation state: det F <= 0");

    const Mat3 c = matmul3(transpose3(f), f);
    const double i1 = trace3(c);
    const double j = std::sqrt(det3(c));
    return 0.5 * s.mu * (i1 - 3.0 - 2.0 * std::log(j)) + 0.5 * s.kappa * (j - 1.0) * (j - 1.0);
}

double neo_hooke_W_expanded(const StrainState& s) {
    Mat3 e1{}, e2{};
    const Mat3 gt = transpose3(s.gradu);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            e1[i][j] = 0.5 * (s.gradu[i][j] + gt[i][j]);
        }
    e2 = matmul3(gt, s.gradu);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            e2[i][j] *= 0.5;

    const double t1 = trace3(e1);
    const Mat3 e1_sq = matmul3(e1, e1);
    const double tr_e1_sq = trace3(e1_sq);
    const double tr_e1_cu = trace3(matmul3(e1_sq, e1));

    const double w2 = s.mu * tr_e1_sq + 0.5 * s.kappa * t1 * t1;

    Mat3 s_lin{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s_lin[i][j] = 2.0 * s.mu * e1[i][j] + (i == j ? s.kappa * t1 : 0.0);
    const double w3 = ddot3(s_lin, e2) +
                      s.kappa * (0.5 * t1 * t1 * t1 - t1 * tr_e1_sq) -
                      4.0 * s.mu / 3.0 * tr_e1_cu;

    const double p2 = s.pi3 * s.pi3;
    return p2 * w2 + p2 * s.pi3 * w3;
}

bool cancellation_probe(double pi3, const Mat3& gradu) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double identity_entry = i == j ? 1.0 : 0.0;
            const double entry = identity_entry + pi3 * gradu[i][j];
            if (entry != identity_entry)
                return false;
        }
    return true;
}

} // namespace formdim
