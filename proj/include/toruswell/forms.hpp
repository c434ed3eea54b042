#pragma once

// Exterior calculus on T^2 for band-limited data: 1-forms, 2-forms, vector
// fields, d, interior product, Lie derivative (Cartan), exactness with
// primitives, and grid positivity certificates.
//
// Orientation convention: dx ^ dy is positive and iota_{d/dx}(dx ^ dy) = dy.

#include <optional>

#include "toruswell/scalar_field.hpp"

namespace toruswell::spectral {

struct OneForm {
    ScalarField dx_comp;
    ScalarField dy_comp;

    OneForm() = default;
    OneForm(ScalarField a, ScalarField b);

    static OneForm dx() { return OneForm(ScalarField::constant(1.0), ScalarField()); }
    static OneForm dy() { return OneForm(ScalarField(), ScalarField::constant(1.0)); }

    OneForm& operator+=(const OneForm& rhs);
    OneForm& operator-=(const OneForm& rhs);
    OneForm& operator*=(double s);
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
    friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
    friend OneForm operator*(OneForm a, double s) { return a *= s; }
    friend OneForm operator*(double s, OneForm a) { return a *= s; }
    friend OneForm operator-(OneForm a) { return a *= -1.0; }
};

struct TwoForm {
    ScalarField density;  // coefficient of dx ^ dy

    TwoForm() = default;
    explicit TwoForm(ScalarField w) : density(std::move(w)) {}
};

struct VectorField {
    ScalarField x_comp;
    ScalarField y_comp;

    VectorField() = default;
    VectorField(ScalarField a, ScalarField b);

    static VectorField d_dx() { return VectorField(ScalarField::constant(1.0), ScalarField()); }
    static VectorField d_dy() { return VectorField(ScalarField(), ScalarField::constant(1.0)); }
};

/// The product flow f(y) d/dx. Throws if f has x-dependence above 1e-12.
VectorField product_flow(const ScalarField& f_of_y);

/// True when X = f(y) d/dx within tol.
bool is_product_flow(const VectorField& X, double tol = 1e-12);

/// d on functions: dg = g_x dx + g_y dy.
OneForm exterior_derivative(const ScalarField& g);

/// d on 1-forms: d(theta) = (d_x theta_2 - d_y theta_1) dx ^ dy.
TwoForm exterior_derivative(const OneForm& theta);

/// theta . X = theta_1 X^1 + theta_2 X^2 (exact product; modes add).
ScalarField pairing(const OneForm& theta, const VectorField& X);

/// iota_X (w dx ^ dy) = w (X^1 dy - X^2 dx).
OneForm interior_product(const VectorField& X, const TwoForm& w);

/// X(g) = X^1 g_x + X^2 g_y.
ScalarField directional_derivative(const VectorField& X, const ScalarField& g);

/// Cartan: L_X theta = iota_X d theta + d(theta . X).
OneForm lie_derivative(const VectorField& X, const OneForm& theta);

struct ExactnessResult {
    bool is_exact = false;
    double closedness_residual = 0.0;  // sup |d theta|
    double period_x = 0.0;             // |theta_1 hat (0,0)|
    double period_y = 0.0;             // |theta_2 hat (0,0)|
    std::optional<ScalarField> primitive;
};

/// Exactness on T^2: closed plus vanishing periods over both generating
/// cycles; the periods are single coefficient reads. When exact, the
/// primitive L with dL = theta and mean(L) = 0 is reconstructed mode-wise.
ExactnessResult exactness_test(const OneForm& theta, double tol = kDefaultTol);

/// max of the component sup norms on a shared grid.
double sup_norm(const OneForm& theta, int grid_n = 0);
double sup_norm(const TwoForm& w, int grid_n = 0);

}  // namespace toruswell::spectral
