#pragma once

// Shared test helpers: seeded random band-limited fields and quadrature /
// finite-difference oracles that stay independent of the coefficient
// arithmetic they are used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "toruswell/forms.hpp"

namespace toruswell::testsupport {

using spectral::OneForm;
using spectral::ScalarField;
using spectral::VectorField;

inline ScalarField random_field(std::mt19937_64& rng, int max_mode, double amplitude = 1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ScalarField g(max_mode);
    for (int m = 0; m <= max_mode; ++m)
        for (int n = -max_mode; n <= max_mode; ++n) {
            if (m == 0 && n < 0) continue;
            const double decay =
                amplitude / ((1.0 + std::abs(m) + std::abs(n)) * (1.0 + std::abs(m) + std::abs(n)));
            if (m == 0 && n == 0) {
                g.set_coeff(0, 0, {decay * gauss(rng), 0.0});
            } else {
                g.set_coeff(m, n, {decay * gauss(rng), decay * gauss(rng)});
            }
        }
    return g;
}

inline ScalarField random_y_field(std::mt19937_64& rng, int max_mode, double amplitude = 1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ScalarField g(max_mode);
    g.set_coeff(0, 0, {amplitude * gauss(rng), 0.0});
    for (int n = 1; n <= max_mode; ++n) {
        const double decay = amplitude / ((1.0 + n) * (1.0 + n));
        g.set_coeff(0, n, {decay * gauss(rng), decay * gauss(rng)});
    }
    return g;
}

inline OneForm random_one_form(std::mt19937_64& rng, int max_mode, double amplitude = 1.0) {
    return OneForm(random_field(rng, max_mode, amplitude),
                   random_field(rng, max_mode, amplitude));
}

/// The worked profile f(y) = sin(2 pi y) + 2 as an exact max_mode-1 field.
inline ScalarField torus_profile() {
    ScalarField f = ScalarField::harmonic(0, 1, {0.0, -0.5});  // sin(2 pi y)
    f += ScalarField::constant(2.0);
    return f;
}

/// Periodic rectangle-rule quadrature of a pointwise evaluator over x at
/// fixed y (spectrally accurate for trigonometric integrands).
inline double quad_integral_x(const std::function<double(double, double)>& fn, double y,
                              int n = 1024) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += fn(static_cast<double>(i) / n, y);
    return s / n;
}

inline double quad_integral_y(const std::function<double(double, double)>& fn, double x,
                              int n = 1024) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += fn(x, static_cast<double>(j) / n);
    return s / n;
}

/// Central finite difference of a 1-d function.
inline double central_diff(const std::function<double(double)>& fn, double t,
                           double h = 1e-6) {
    return (fn(t + h) - fn(t - h)) / (2.0 * h);
}

/// Max |a - b| over a uniform grid of two pointwise evaluators.
inline double grid_distance(const std::function<double(double, double)>& a,
                            const std::function<double(double, double)>& b, int n = 64) {
    double d = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double x = static_cast<double>(i) / n;
            const double y = static_cast<double>(j) / n;
            d = std::max(d, std::abs(a(x, y) - b(x, y)));
        }
    return d;
}

}  // namespace toruswell::testsupport
