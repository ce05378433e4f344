#pragma once

#include <array>
#include <string>
#include <vector>

#include "formdim/passes.hpp"

namespace formdim {

struct FieldDecl {
    std::string name;
    Shape shape;
};

struct TermGroup {
    std::string name;
    TermMap terms;
    std::string reference;
};

/// Values the fixture is expected to reproduce, used by the demo
/// self-checks. Tests carry their own frozen copies.
struct ExpectedTables {
    std::vector<double> pi_values;
    std::vector<std::pair<std::string, double>> reference_factor_values; // group -> value
    std::vector<std::pair<std::string, double>> coefficient_values;      // term -> value
};

/// A complete analysis setup: quantities, fields, the dimensional mapping
/// and the tagged weak-form terms with per-group reference terms.
struct Scenario {
    std::string name;
    std::vector<Quantity> quantities;
    int dimension = 0;
    std::vector<FieldDecl> fields;
    Mapping mapping;
    std::vector<TermGroup> groups;
    ExpectedTables expected;

    const Quantity& quantity(const std::string& qname) const;
    Shape field_shape(const std::string& fname) const;
};

/// Built-in fixtures: "navier_stokes" (incompressible momentum + mass
/// system, d=2), "neo_hooke" (compressible hyperelastic energy split, d=3),
/// "pnp" (coupled ion transport / potential system, d=1).
Scenario builtin_scenario(const std::string& name);

/// The names accepted by builtin_scenario.
std::vector<std::string> builtin_scenario_names();

/// Variant of the hyperelastic fixture whose shear term is written directly
/// in the deformation gradient I + grad(u): its factorization fails with
/// inconsistent factors.
Scenario neo_hooke_gradient_scenario();

/// Single-species transport term using the rational activity model with the
/// unexpanded 1 + B a sqrt(I) denominator; factorizing its transform raises
/// InconsistentFactors.
ExprPtr pnp_unexpanded_activity_term(const Scenario& pnp);

/// Deep structural equality of two scenarios (quantities, mapping, fields,
/// term DAGs, references).
bool scenario_equal(const Scenario& a, const Scenario& b);

// ---------------------------------------------------------------------------
// Hyperelastic expansion numerics
// ---------------------------------------------------------------------------

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Strain sample: displacement gradient of order one, the displacement-to-
/// length ratio pi3, and the shear/bulk moduli.
struct StrainState {
    Mat3 gradu{};
    double pi3 = 0.0;
    double mu = 0.0;
    double kappa = 0.0;
};

/// Energy density from the deformation gradient F = I + pi3 * gradu:
///   mu/2 (tr(F^T F) - 3 - 2 ln J) + kappa/2 (J - 1)^2,  J = sqrt(det(F^T F)).
/// Throws for non-admissible states (det F <= 0).
double neo_hooke_W_full(const StrainState& s);

/// Second- plus third-order expansion in pi3 with E1 = (g + g^T)/2 and
/// E2 = g^T g / 2:
///   pi3^2 (mu tr(E1^2) + kappa/2 tr(E1)^2)
/// + pi3^3 ((2 mu E1 + kappa tr(E1) I) : E2
///          + kappa (tr(E1)^3 / 2 - tr(E1) tr(E1^2)) - 4 mu/3 tr(E1^3)).
double neo_hooke_W_expanded(const StrainState& s);

/// True iff I + pi3 * gradu equals the identity bit-for-bit in binary64.
bool cancellation_probe(double pi3, const Mat3& gradu);

} // namespace formdim
