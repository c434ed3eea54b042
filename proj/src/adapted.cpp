#include "toruswell/adapted.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toruswell::adapted {

using spectral::directional_derivative;
using spectral::exactness_test;
using spectral::exterior_derivative;
using spectral::interior_product;
using spectral::lie_derivative;
using spectral::pairing;
using spectral::sup_norm;

AdaptedReport check_adapted(const VectorField& X, const OneForm& theta, double tol,
                            int grid_n) {
    if (tol <= 0.0) throw std::invalid_argument("check_adapted: tol must be > 0");

    AdaptedReport rep;
    rep.tol = tol;

    const ScalarField pair = pairing(theta, X);
    if (grid_n == 0) grid_n = std::max(8, 4 * (pair.max_mode() + 1));
    rep.grid_n = grid_n;

    rep.pairing_min = pair.min_on_grid(grid_n);
    // Certified bound: grid min minus Lipschitz constant times half the
    // grid cell diagonal.
    const double cell = 1.0 / grid_n;
    rep.pairing_certified_lower =
        rep.pairing_min - pair.lipschitz_bound() * cell * std::numbers::sqrt2 / 2.0;

    const OneForm lie = lie_derivative(X, theta);
    const OneForm iota = interior_product(X, exterior_derivative(theta));

    const auto exact = exactness_test(lie, tol);
    rep.closedness_residual = exact.closedness_residual;
    rep.period_residual_x = exact.period_x;
    rep.period_residual_y = exact.period_y;
    rep.interior_residual = sup_norm(iota);
    rep.lie_residual = sup_norm(lie);
    rep.unit_pairing_residual = (pair - ScalarField::constant(1.0)).sup_norm();

    rep.weakly_adapted = rep.pairing_min >= -tol && exact.is_exact;
    rep.strongly_adapted = rep.pairing_min > tol && exact.is_exact;
    rep.geodesible_for_theta = rep.pairing_min > tol && rep.interior_residual <= tol;
    rep.strongly_geodesible_for_theta =
        rep.unit_pairing_residual <= tol && rep.lie_residual <= tol;

    if (exact.is_exact && exact.primitive.has_value()) {
        rep.primitive_check_residual =
            sup_norm(exterior_derivative(*exact.primitive) - lie);
        rep.lagrangian_primitive = exact.primitive;
    }
    rep.truncated = pair.truncated() || lie.dx_comp.truncated() || lie.dy_comp.truncated();
    return rep;
}

const char* to_string(HomwellKind k) {
    switch (k) {
        case HomwellKind::homwell_k: return "homwell_k";
        case HomwellKind::homwell2: return "homwell2";
        case HomwellKind::spherical: return "spherical";
        case HomwellKind::homwell0: return "homwell0";
    }
    return "?";
}

const char* to_string(InfeasibilityCertificate::Kind k) {
    switch (k) {
        case InfeasibilityCertificate::Kind::torus_obstruction: return "torus_obstruction";
        case InfeasibilityCertificate::Kind::orbit_positivity: return "orbit_positivity";
    }
    return "?";
}

ConditionReport check_homwell_condition(const VectorField& X, const OneForm& theta,
                                        const ScalarField& R, double k, HomwellKind kind,
                                        double tol) {
    if (tol <= 0.0) throw std::invalid_argument("check_homwell_condition: tol must be > 0");
    if (kind == HomwellKind::homwell0)
        throw std::invalid_argument(
            "check_homwell_condition: degree 0 has no satisfiable condition; "
            "use check_homwell0_impossible");
    if (kind == HomwellKind::homwell_k && k == 0.0)
        throw std::invalid_argument(
            "check_homwell_condition: k = 0 rejected for homwell_k; "
            "use check_homwell0_impossible");

    ConditionReport rep;
    rep.kind = kind;
    rep.k = k;
    rep.tol = tol;

    const OneForm lie = lie_derivative(X, theta);
    OneForm lhs;
    switch (kind) {
        case HomwellKind::homwell_k: {
            const ScalarField r2_half = 0.5 * (R * R);
            const ScalarField yy =
                directional_derivative(X, directional_derivative(X, r2_half));
            lhs = k * lie + (1.0 - k / 2.0) * exterior_derivative(pairing(theta, X)) -
                  exterior_derivative(yy);
            rep.r_positive = R.min_on_grid(std::max(8, 4 * (R.max_mode() + 1))) > 0.0;
            if (k != 2.0)
                rep.open_note =
                    "for k outside {0,2} it is unknown whether this condition can "
                    "obstruct a flow that has strongly adapted 1-forms; a nonzero "
                    "residual only rejects the supplied witness";
            break;
        }
        case HomwellKind::homwell2: {
            const ScalarField r2 = R * R;
            const ScalarField yy = directional_derivative(X, directional_derivative(X, r2));
            lhs = exterior_derivative(yy) - 4.0 * lie;
            rep.r_positive = R.min_on_grid(std::max(8, 4 * (R.max_mode() + 1))) > 0.0;
            break;
        }
        case HomwellKind::spherical: {
            lhs = 2.0 * k * lie - (k - 2.0) * exterior_derivative(pairing(theta, X));
            break;
        }
        case HomwellKind::homwell0:
            break;  // unreachable
    }
    rep.residual_inf_norm = sup_norm(lhs);
    rep.satisfied = rep.residual_inf_norm <= tol && rep.r_positive;
    return rep;
}

ObstructionIdentity obstruction_residual(const ScalarField& f_of_y, const OneForm& theta,
                                         const ScalarField& r) {
    if (!f_of_y.is_y_only())
        throw std::invalid_argument("obstruction_residual: f must depend on y only");
    const VectorField Y = spectral::product_flow(f_of_y);

    const OneForm lie = lie_derivative(Y, theta);
    const ScalarField yyr = directional_derivative(Y, directional_derivative(Y, r));
    const OneForm dyyr = exterior_derivative(yyr);

    ObstructionIdentity out;
    out.lhs = (lie.dy_comp - dyyr.dy_comp).x_average();
    out.rhs = f_of_y.derivative_y() * theta.dx_comp.x_average();
    out.difference = out.lhs - out.rhs;
    return out;
}

double orbit_integral(const VectorField& X, const ScalarField& integrand, double y0) {
    if (!is_product_flow(X))
        throw std::invalid_argument("orbit_integral: X must be a product flow f(y) d/dx");
    const double f0 = X.x_comp.evaluate(0.0, y0);
    if (std::abs(f0) < 1e-12)
        throw std::domain_error("orbit_integral: singular orbit, f(y0) = 0");
    const double average = integrand.x_average().evaluate(0.0, y0);
    return average / std::abs(f0);
}

InfeasibilityCertificate check_homwell0_impossible(const VectorField& X, const OneForm& theta,
                                                   double y0, double tol) {
    const AdaptedReport rep = check_adapted(X, theta, tol);
    if (!rep.strongly_adapted)
        throw std::invalid_argument(
            "check_homwell0_impossible: theta is not strongly adapted for X");

    const double lower = orbit_integral(X, pairing(theta, X), y0);
    InfeasibilityCertificate cert;
    cert.kind = InfeasibilityCertificate::Kind::orbit_positivity;
    cert.y_witness = y0;
    cert.lower_bound = lower;
    cert.explanation =
        "on the closed orbit through (0, " + std::to_string(y0) +
        ") the orbit integral of theta.Y equals " + std::to_string(lower) +
        " > 0, while YY(g) integrates to zero over the orbit for every g; the "
        "degree-0 balance 0 = -YY(R^2/2) + theta.Y therefore has no solution R";
    return cert;
}

}  // namespace toruswell::adapted
