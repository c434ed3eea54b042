#pragma once

// Potentials on R^m: quadratic forms, closed-form expressions supplied by
// the caller, and degree-k homogeneous extensions of sphere data. Includes
// the Euler homogeneity diagnostic <grad V, x> = k V.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace toruswell::wells {

enum class PotentialKind { quadratic_form, homogeneous_extension, closed_form };

const char* to_string(PotentialKind k);

struct Potential {
    int dimension = 1;
    std::optional<double> degree;
    double epsilon = 0.1;  // inner radius of the homogeneity region
    PotentialKind kind = PotentialKind::closed_form;
    std::string description;
    std::vector<double> quadratic;  // row-major dimension x dimension matrix when quadratic

    std::function<double(std::span<const double>)> value;
    std::function<std::vector<double>(std::span<const double>)> gradient;

    double operator()(std::span<const double> x) const { return value(x); }
};

/// V(x) = x^T A x / 2 with A symmetric (row-major). Homogeneous of degree 2
/// and smooth at the origin.
Potential quadratic_potential(std::vector<double> a_rowmajor, int dimension);

/// Caller-supplied evaluator and gradient.
Potential closed_form_potential(int dimension,
                                std::function<double(std::span<const double>)> value,
                                std::function<std::vector<double>(std::span<const double>)> gradient,
                                std::string description, std::optional<double> degree = {});

/// Degree-k extension of sphere data: V(x) = |x|^k V1(x/|x|) for |x| >= eps,
/// blended smoothly to the constant 0 inside |x| < eps. The tangential
/// gradient of V1 is taken from sphere_gradient when supplied (projected
/// onto the tangent space) and from central differences of the degree-0
/// extension otherwise, so the Euler identity holds by construction.
Potential homogeneous_extension(
    int dimension, double k, std::function<double(std::span<const double>)> sphere_value,
    std::function<std::vector<double>(std::span<const double>)> sphere_gradient = nullptr,
    double epsilon = 0.1);

/// max over samples of |<grad V(x), x> - k V(x)| / (1 + |V(x)|), sampled on
/// `direction_samples` random directions times 8 log-spaced radii inside
/// radius_range. Deterministic for a fixed seed.
double euler_residual(const Potential& V, double k, int direction_samples,
                      std::pair<double, double> radius_range, unsigned seed = 20260808);

/// max over samples of the relative disagreement between the stored gradient
/// and central finite differences of value.
double gradient_consistency(const Potential& V, int samples, double radius,
                            unsigned seed = 20260808);

}  // namespace toruswell::wells
