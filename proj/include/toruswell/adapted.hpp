#pragma once

// Per-form verdicts for the adapted / geodesible conditions of explicit
// torus flows, the homogeneous-well conditions, the product-flow
// obstruction identity, orbit integrals, and the degree-zero impossibility
// certificate.
//
// Verdicts are always about the supplied 1-form, never about the flow
// itself: the underlying conditions quantify existentially over forms.

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "toruswell/forms.hpp"

namespace toruswell::adapted {

using spectral::OneForm;
using spectral::ScalarField;
using spectral::VectorField;

struct AdaptedReport {
    bool weakly_adapted = false;
    bool strongly_adapted = false;
    bool geodesible_for_theta = false;
    bool strongly_geodesible_for_theta = false;

    double pairing_min = 0.0;             // grid minimum of theta . X
    double pairing_certified_lower = 0.0; // grid min minus Lipschitz correction
    double closedness_residual = 0.0;     // sup |d(L_X theta)|
    double period_residual_x = 0.0;       // |(L_X theta)_1 hat(0,0)|
    double period_residual_y = 0.0;       // |(L_X theta)_2 hat(0,0)|
    double interior_residual = 0.0;       // sup |iota_X d theta|
    double lie_residual = 0.0;            // sup |L_X theta|
    double unit_pairing_residual = 0.0;   // sup |theta . X - 1|

    std::optional<ScalarField> lagrangian_primitive;  // L with dL = L_X theta
    double primitive_check_residual = 0.0;            // sup |dL - L_X theta|

    double tol = spectral::kDefaultTol;
    int grid_n = 0;
    bool truncated = false;
};

/// Evaluates every flag of AdaptedReport for the pair (X, theta).
/// grid_n == 0 picks 4*(M+1) for the pairing's mode range.
AdaptedReport check_adapted(const VectorField& X, const OneForm& theta,
                            double tol = spectral::kDefaultTol, int grid_n = 0);

enum class HomwellKind { homwell_k, homwell2, spherical, homwell0 };

const char* to_string(HomwellKind k);

struct ConditionReport {
    HomwellKind kind = HomwellKind::homwell_k;
    double k = 0.0;
    double residual_inf_norm = 0.0;
    bool satisfied = false;
    bool r_positive = true;  // grid positivity of R when the condition uses R
    double tol = spectral::kDefaultTol;
    /// Set for homwell_k with k outside {0, 2}: nobody knows whether that
    /// condition can actually fail for flows that admit strongly adapted
    /// forms, so a negative verdict here is about this witness only.
    std::optional<std::string> open_note;
};

/// Residual of the selected condition's left-hand side:
///   homwell_k : k L_Y theta + (1 - k/2) d(theta.Y) - d(YY(R^2/2))
///   homwell2  : d(YY(R^2)) - 4 L_Y theta
///   spherical : 2k L_Y theta - (k - 2) d(theta.Y)   (R ignored)
/// homwell_k with k == 0 and kind homwell0 are rejected; use
/// check_homwell0_impossible for the degree-zero question.
ConditionReport check_homwell_condition(const VectorField& X, const OneForm& theta,
                                        const ScalarField& R, double k, HomwellKind kind,
                                        double tol = spectral::kDefaultTol);

struct InfeasibilityCertificate {
    enum class Kind { torus_obstruction, orbit_positivity };
    Kind kind = Kind::torus_obstruction;
    double y_witness = 0.0;
    double lower_bound = 0.0;  // strictly positive when emitted
    std::string explanation;
};

const char* to_string(InfeasibilityCertificate::Kind k);

struct SearchWitness {
    OneForm theta;
    std::optional<ScalarField> r;
    double equality_residual = 0.0;
    double pairing_min = 0.0;
};

struct Inconclusive {
    std::string reason;
    double equality_residual = 0.0;
};

enum class SearchConstraint { strongly_adapted, homwell2_joint };

using SearchOutcome = std::variant<SearchWitness, InfeasibilityCertificate, Inconclusive>;

/// Least-squares feasibility search over Fourier coefficients up to
/// max_mode, gauge-fixed by integral(theta_1) = 1. A witness is accepted
/// iff the equality residual is <= 1e-8 and theta . X is positive on the
/// grid. For homwell2_joint on a product flow with nonconstant f the
/// search short-circuits to the torus obstruction certificate.
SearchOutcome search_adapted(const VectorField& X, int max_mode, SearchConstraint constraint,
                             int grid_n = 0);

struct ObstructionIdentity {
    ScalarField lhs;         // y -> integral_x (L_Y theta - d(YY r))(d/dy) dx
    ScalarField rhs;         // y -> f'(y) * integral_x theta_1 dx
    ScalarField difference;  // lhs - rhs, identically zero in exact arithmetic
};

/// The identity behind the obstruction: integrating the dy-component of
/// L_Y theta - d(YY r) over the x-cycle leaves f'(y) integral_x theta_1 dx,
/// for every theta and r. Both sides are computed by independent routes.
ObstructionIdentity obstruction_residual(const ScalarField& f_of_y, const OneForm& theta,
                                         const ScalarField& r);

/// Integral of a scalar integrand over the closed orbit of f(y) d/dx
/// through (0, y0): (x-average of the integrand on the orbit) / |f(y0)|.
/// Throws on singular orbits (f(y0) == 0).
double orbit_integral(const VectorField& X, const ScalarField& integrand, double y0);

/// Certificate that the strongly adapted pair (X, theta) cannot satisfy the
/// degree-zero balance 0 = -YY(R^2/2) + theta.Y on the closed orbit through
/// (0, y0): the orbit integral of theta.Y is strictly positive while every
/// YY(g) integrates to zero. Requires theta strongly adapted.
InfeasibilityCertificate check_homwell0_impossible(const VectorField& X, const OneForm& theta,
                                                   double y0,
                                                   double tol = spectral::kDefaultTol);

}  // namespace toruswell::adapted
